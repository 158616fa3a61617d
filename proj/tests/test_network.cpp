#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "ianet/errors.hpp"
#include "ianet/network.hpp"

using namespace ianet;

namespace {

NetworkConfig default_config(std::size_t n, std::uint64_t seed = 1) {
  NetworkConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return cfg;  // unit box placements, alpha=2, c_dec=1, rho0=1e-3
}

// Both ends pinned (sd tiny enough that coordinates round to the mean), a
// deterministic network with tx-rx distance 0.5.
NetworkConfig point_mass_config(std::size_t n, std::uint64_t seed = 1) {
  NetworkConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.tx_placement = PlacementSpec::gaussian_spec({0.0, 0.0}, 1e-300);
  cfg.rx_placement = PlacementSpec::gaussian_spec({0.5, 0.0}, 1e-300);
  return cfg;
}

}  // namespace

TEST_CASE("layout sampling is deterministic and sized n*dim") {
  const NetworkConfig cfg = default_config(3, 9);
  const NodeLayout a = sample_layout(cfg, 4);
  const NodeLayout b = sample_layout(cfg, 4);
  CHECK(a == b);
  CHECK(a.tx.size() == 6);
  CHECK(a.rx.size() == 6);
  for (double c : a.tx) {
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  CHECK(sample_layout(cfg, 5).tx != a.tx);
}

TEST_CASE("uniform box coordinates have the right mean") {
  NetworkConfig cfg = default_config(1, 3);
  cfg.tx_placement = PlacementSpec::uniform_box_spec({2.0, 2.0});
  const int m = 20000;
  double sum = 0.0;
  for (int inst = 0; inst < m; ++inst) {
    const NodeLayout l = sample_layout(cfg, inst);
    sum += l.tx[0] + l.tx[1];
  }
  const double mean = sum / (2.0 * m);  // each coord uniform on [0,2]
  CHECK(std::abs(mean - 1.0) < 3.0 * (2.0 / std::sqrt(12.0)) / std::sqrt(2.0 * m));
}

TEST_CASE("gaussian placement centers on its mean") {
  NetworkConfig cfg = default_config(1, 5);
  cfg.tx_placement = PlacementSpec::gaussian_spec({3.0, -1.0}, 0.5);
  cfg.rx_placement = PlacementSpec::gaussian_spec({3.0, -1.0}, 0.5);
  cfg.attenuation.rho0 = 1e-3;
  const int m = 20000;
  double sx = 0.0, sy = 0.0;
  for (int inst = 0; inst < m; ++inst) {
    const NodeLayout l = sample_layout(cfg, inst);
    sx += l.tx[0];
    sy += l.tx[1];
  }
  CHECK(std::abs(sx / m - 3.0) < 3.0 * 0.5 / std::sqrt(double(m)));
  CHECK(std::abs(sy / m + 1.0) < 3.0 * 0.5 / std::sqrt(double(m)));
}

TEST_CASE("custom density lands in high-weight cells proportionally") {
  NetworkConfig cfg = default_config(1, 11);
  // Two cells along x: weight 3 on the left, 1 on the right.
  cfg.tx_placement = PlacementSpec::density_spec({0.0, 0.0}, {1.0, 1.0}, {2, 1}, {3.0, 1.0});
  cfg.rx_placement = cfg.tx_placement;
  const int m = 20000;
  int left = 0;
  for (int inst = 0; inst < m; ++inst)
    if (sample_layout(cfg, inst).tx[0] < 0.5) ++left;
  const double p = double(left) / m;
  CHECK(std::abs(p - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / m));
}

TEST_CASE("placement validation rejects bad specs") {
  CHECK_THROWS_AS(PlacementSpec::uniform_box_spec({1.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(PlacementSpec::gaussian_spec({0.0}, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(PlacementSpec::density_spec({0.0}, {1.0}, {2}, {0.0, 0.0}).validate(),
                  ConfigError);
  CHECK_THROWS_AS(PlacementSpec::density_spec({0.0}, {1.0}, {2}, {1.0}).validate(), ConfigError);
}

TEST_CASE("attenuation gain matches the closed form") {
  AttenuationSpec a{2.0, 1.0, 0.0};
  CHECK(a.gain(0.5) == 4.0);
  CHECK(a.gain(1.0) == 1.0);
  AttenuationSpec cutoff{2.0, 1.0, 0.1};
  CHECK(cutoff.gain(0.05) == cutoff.gain(0.1));
  CHECK(cutoff.gain(0.05) == doctest::Approx(100.0).epsilon(1e-12));
  AttenuationSpec scaled{3.0, 2.5, 0.0};
  CHECK(scaled.gain(1.0) == 2.5);
  CHECK_THROWS_AS(a.gain(0.0), SimulationError);
  CHECK(attenuation_gain(a, 2.0) == 0.25);
}

TEST_CASE("attenuation gain is nonincreasing in distance") {
  AttenuationSpec specs[] = {{2.0, 1.0, 1e-3}, {1.0, 0.5, 0.0}, {3.5, 2.0, 0.2}};
  for (const auto& spec : specs) {
    double prev = spec.gain(1e-4);
    for (double rho = 1e-3; rho < 10.0; rho *= 1.7) {
      const double g = spec.gain(rho);
      CHECK(g <= prev);
      prev = g;
    }
  }
}

TEST_CASE("attenuation validation") {
  CHECK_THROWS_AS((AttenuationSpec{0.0, 1.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS((AttenuationSpec{2.0, 0.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS((AttenuationSpec{2.0, 1.0, -1.0}).validate(), ConfigError);
}

TEST_CASE("gains at a pinned geometry") {
  const NetworkConfig cfg = point_mass_config(1);
  const NodeLayout l = sample_layout(cfg, 0);
  const ChannelGains g = compute_gains(cfg, l, 0);
  CHECK(g.snr[0] == 4.0);  // distance 0.5, alpha 2
  CHECK(g.inr.size() == 1);
  CHECK(g.inr[0] == 0.0);  // diagonal unused
}

TEST_CASE("permuting pair indices permutes the gain matrices exactly") {
  const NetworkConfig cfg = default_config(5, 21);
  const NodeLayout l = sample_layout(cfg, 0);
  const ChannelGains g = compute_gains(cfg, l, 0);

  const std::size_t perm[5] = {3, 0, 4, 1, 2};
  NodeLayout pl;
  pl.n = 5;
  pl.dim = 2;
  pl.tx.resize(10);
  pl.rx.resize(10);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      pl.tx[i * 2 + k] = l.tx_at(perm[i])[k];
      pl.rx[i * 2 + k] = l.rx_at(perm[i])[k];
    }
  rng::StreamRng unused(cfg.seed, 0, rng::Stream::fading);
  const ChannelGains pg = compute_gains(pl, cfg.attenuation, FadingMode::unit_modulus, unused);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(pg.snr[i] == g.snr[perm[i]]);
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) CHECK(pg.inr_at(i, j) == g.inr_at(perm[i], perm[j]));
  }
}

TEST_CASE("rayleigh fading is unit mean over draws") {
  NetworkConfig cfg = point_mass_config(1);
  cfg.fading = FadingMode::rayleigh;
  const int m = 100000;
  double sum = 0.0;
  for (int inst = 0; inst < m; ++inst) {
    const NodeLayout l = sample_layout(cfg, inst);
    sum += compute_gains(cfg, l, inst).snr[0];
  }
  // gain = 4 |H|^2 with |H|^2 ~ Exp(1): mean 4, sd 4
  CHECK(std::abs(sum / m - 4.0) < 3.0 * 4.0 / std::sqrt(double(m)));
}

TEST_CASE("rate matrix values and monotonicity") {
  ChannelGains g;
  g.n = 2;
  g.snr = {4.0, 1.5};
  g.inr = {0.0, 0.5, 0.0, 0.0};
  const RateMatrix s = rate_matrix(g);
  CHECK(s.at(0, 0) == doctest::Approx(1.5849625007211562).epsilon(1e-15));
  CHECK(s.at(1, 1) == 1.0);  // 1/2 log2(4)
  CHECK(s.at(0, 1) == 0.5);  // 1/2 log2(2)
  CHECK(s.at(1, 0) == 0.0);
  CHECK(half_log_rate(0.0) == 0.0);
  double prev = -1.0;
  for (double gain = 0.0; gain < 100.0; gain += 0.7) {
    const double r = half_log_rate(gain);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("diagonal rates reproduce the full pipeline") {
  for (FadingMode mode : {FadingMode::unit_modulus, FadingMode::rayleigh}) {
    NetworkConfig cfg = default_config(6, 33);
    cfg.fading = mode;
    for (std::uint64_t inst = 0; inst < 5; ++inst) {
      const NodeLayout l = sample_layout(cfg, inst);
      const RateMatrix s = rate_matrix(compute_gains(cfg, l, inst));
      const std::vector<double> diag = diagonal_rates(cfg, inst);
      for (std::size_t i = 0; i < 6; ++i) CHECK(diag[i] == s.at(i, i));
    }
  }
}

TEST_CASE("estimate_e on a deterministic geometry is exact") {
  const NetworkConfig cfg = point_mass_config(1);
  const LimitEstimate est = estimate_e(cfg, 5000);
  CHECK(est.e_hat == 0.5 * std::log2(9.0));
  CHECK(est.std_err == 0.0);
  CHECK(est.samples == 5000);
  CHECK(est.dropped == 0);
}

TEST_CASE("estimate_e is deterministic and self-consistent across sample counts") {
  const NetworkConfig cfg = default_config(1, 17);
  const LimitEstimate small = estimate_e(cfg, 20000);
  CHECK(estimate_e(cfg, 20000) == small);
  const LimitEstimate big = estimate_e(cfg, 400000);
  const double band = 4.0 * std::sqrt(small.std_err * small.std_err +
                                      big.std_err * big.std_err);
  CHECK(std::abs(small.e_hat - big.e_hat) < band);
  // std_err shrinks like 1/sqrt(samples)
  const double ratio = small.std_err / big.std_err;
  CHECK(ratio > 0.8 * std::sqrt(20.0));
  CHECK(ratio < 1.2 * std::sqrt(20.0));
}

TEST_CASE("separation probe is a CDF on the grid") {
  const NetworkConfig cfg = default_config(1, 8);
  const auto points = spatial_separation_probe(cfg, {0.0, 0.05, 0.2, 2.0}, 50000);
  CHECK(points[0].prob == 0.0);   // continuous placements never coincide
  CHECK(points[3].prob == 1.0);   // 2 exceeds the box diameter sqrt(2)
  CHECK(points[1].prob <= points[2].prob);
  CHECK(points[1].prob > 0.0);
}

TEST_CASE("separation probe scales like rho^2 in the plane") {
  const NetworkConfig cfg = default_config(1, 12);
  const auto points = spatial_separation_probe(cfg, {0.02, 0.04, 0.08, 0.16}, 400000);
  const double slope = fit_separation_exponent(points);
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
}

TEST_CASE("probe grid validation") {
  const NetworkConfig cfg = default_config(1);
  CHECK_THROWS_AS(spatial_separation_probe(cfg, {}, 10), ConfigError);
  CHECK_THROWS_AS(spatial_separation_probe(cfg, {0.2, 0.1}, 10), ConfigError);
  CHECK_THROWS_AS(spatial_separation_probe(cfg, {-0.1, 0.1}, 10), ConfigError);
}

TEST_CASE("network validation rejects dimension mismatches") {
  NetworkConfig cfg = default_config(2);
  cfg.dim = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = default_config(0);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
