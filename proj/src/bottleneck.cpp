#include "ianet/bottleneck.hpp"

#include <cmath>

#include "ianet/errors.hpp"
#include "ianet/parallel.hpp"

namespace ianet {

bool is_bottleneck(const RateMatrix& s, double e_used, double epsilon, std::size_t i,
                   std::size_t j) {
  if (i == j) throw ConfigError("bottleneck link needs distinct indices");
  if (i >= s.n || j >= s.n) throw ConfigError("bottleneck link index out of range");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const double cap = e_used + 0.5 * epsilon;
  return s.at(i, i) <= cap && s.at(j, i) <= cap && s.at(j, j) <= s.at(j, i);
}

double BottleneckSet::beta_hat() const {
  if (n < 2) return 0.0;
  return static_cast<double>(links.size()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

BottleneckSet detect_bottlenecks(const RateMatrix& s, double e_used, double epsilon) {
  if (s.n < 2) throw ConfigError("bottleneck detection needs at least two users");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  BottleneckSet set;
  set.n = s.n;
  set.e_used = e_used;
  set.epsilon = epsilon;
  const double cap = e_used + 0.5 * epsilon;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.at(i, i) > cap) continue;  // B1 kills the whole row
    for (std::size_t j = 0; j < s.n; ++j) {
      if (i == j) continue;
      const double s_ji = s.at(j, i);
      if (s_ji <= cap && s.at(j, j) <= s_ji)
        set.links.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return set;
}

UVStats uv_statistics(const BottleneckSet& set, std::span<const double> rates) {
  if (rates.size() != set.n) throw ConfigError("rate vector length must equal n");
  for (double r : rates)
    if (!std::isfinite(r) || r < 0.0) throw ConfigError("rates must be finite and nonnegative");
  UVStats uv;
  uv.count = set.links.size();
  uv.beta_hat = set.beta_hat();
  const double pairs = static_cast<double>(set.n) * static_cast<double>(set.n - 1);
  double sum = 0.0;
  for (const auto& [i, j] : set.links) sum += rates[i] + rates[j];
  uv.u = sum / pairs;
  // v written through beta_hat so u <= v reduces to the averaged pair bound.
  uv.v = uv.beta_hat * (2.0 * set.e_used + set.epsilon);
  return uv;
}

PairBound pair_sum_bound(const ChannelGains& gains, const RateMatrix& s, std::size_t i,
                         std::size_t j) {
  if (i == j) throw ConfigError("pair bound needs distinct indices");
  if (i >= gains.n || j >= gains.n) throw ConfigError("pair bound index out of range");
  PairBound out;
  out.b3_valid = s.at(j, j) <= s.at(j, i);
  out.bound = std::log2(1.0 + gains.snr[i] + gains.inr_at(j, i));
  return out;
}

CovEstimate empirical_cov_disjoint(const NetworkConfig& config, double e_used, double epsilon,
                                   std::uint64_t replicates, std::array<std::size_t, 4> indices,
                                   unsigned threads) {
  config.validate();
  if (replicates < 2) throw ConfigError("covariance estimate needs at least two replicates");
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (indices[a] == indices[b])
        throw ConfigError("covariance indices must form two disjoint pairs");
  for (std::size_t idx : indices)
    if (idx >= config.n) throw ConfigError("covariance index exceeds n");

  std::vector<std::uint8_t> first(replicates), second(replicates);
  parallel_for_index(replicates, threads, [&](std::size_t r) {
    const NodeLayout layout = sample_layout(config, r);
    const ChannelGains gains = compute_gains(config, layout, r);
    const RateMatrix s = rate_matrix(gains);
    first[r] = is_bottleneck(s, e_used, epsilon, indices[0], indices[1]) ? 1 : 0;
    second[r] = is_bottleneck(s, e_used, epsilon, indices[2], indices[3]) ? 1 : 0;
  });

  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (std::uint64_t r = 0; r < replicates; ++r) {
    sx += first[r];
    sy += second[r];
    sxy += static_cast<double>(first[r]) * static_cast<double>(second[r]);
  }
  const double m = static_cast<double>(replicates);
  CovEstimate est;
  est.replicates = replicates;
  est.mean_first = sx / m;
  est.mean_second = sy / m;
  est.cov = sxy / m - est.mean_first * est.mean_second;
  const double vx = est.mean_first * (1.0 - est.mean_first);
  const double vy = est.mean_second * (1.0 - est.mean_second);
  est.std_err = std::sqrt(vx * vy / m);
  return est;
}

}  // namespace ianet
