#include "ianet/network.hpp"

#include <cmath>

#include "ianet/errors.hpp"

namespace ianet {

std::string to_string(FadingMode mode) {
  return mode == FadingMode::rayleigh ? "rayleigh" : "unit_modulus";
}

FadingMode fading_mode_from_string(const std::string& name) {
  if (name == "unit_modulus") return FadingMode::unit_modulus;
  if (name == "rayleigh") return FadingMode::rayleigh;
  throw ConfigError("unknown fading mode '" + name + "'");
}

void AttenuationSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ConfigError("attenuation alpha must be positive");
  if (!(c_dec > 0.0) || !std::isfinite(c_dec))
    throw ConfigError("attenuation c_dec must be positive");
  if (!(rho0 >= 0.0) || !std::isfinite(rho0))
    throw ConfigError("attenuation rho0 must be nonnegative");
}

double AttenuationSpec::gain(double rho) const {
  if (rho < rho0) rho = rho0;
  if (!(rho > 0.0))
    throw SimulationError("attenuation gain at distance 0 with rho0 = 0 (coincident nodes)");
  return c_dec * std::pow(rho, -alpha);
}

double attenuation_gain(const AttenuationSpec& spec, double rho) { return spec.gain(rho); }

void NetworkConfig::validate() const {
  if (n < 1) throw ConfigError("network n must be at least 1");
  if (dim < 1) throw ConfigError("network dim must be at least 1");
  tx_placement.validate();
  rx_placement.validate();
  if (tx_placement.dimension() != dim)
    throw ConfigError("tx_placement dimension does not match network dim");
  if (rx_placement.dimension() != dim)
    throw ConfigError("rx_placement dimension does not match network dim");
  attenuation.validate();
}

double half_log_rate(double gain) { return 0.5 * std::log2(1.0 + 2.0 * gain); }

NodeLayout sample_layout(const NetworkConfig& config, std::uint64_t instance) {
  config.validate();
  NodeLayout layout;
  layout.n = config.n;
  layout.dim = config.dim;
  rng::StreamRng tx_gen(config.seed, instance, rng::Stream::layout_tx);
  rng::StreamRng rx_gen(config.seed, instance, rng::Stream::layout_rx);
  config.tx_placement.sample(tx_gen, config.n, layout.tx);
  config.rx_placement.sample(rx_gen, config.n, layout.rx);
  return layout;
}

static double distance(const double* a, const double* b, std::size_t dim) {
  double sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = a[k] - b[k];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

ChannelGains compute_gains(const NodeLayout& layout, const AttenuationSpec& attenuation,
                           FadingMode fading, rng::StreamRng& fading_gen) {
  const std::size_t n = layout.n;
  ChannelGains gains;
  gains.n = n;
  gains.snr.resize(n);
  gains.inr.assign(n * n, 0.0);

  // Direct links first, cross links after: diagonal_rates depends on this.
  for (std::size_t i = 0; i < n; ++i) {
    double g = attenuation.gain(distance(layout.tx_at(i), layout.rx_at(i), layout.dim));
    if (fading == FadingMode::rayleigh) g *= fading_gen.exponential();
    gains.snr[i] = g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double g = attenuation.gain(distance(layout.tx_at(i), layout.rx_at(j), layout.dim));
      if (fading == FadingMode::rayleigh) g *= fading_gen.exponential();
      gains.inr_at(i, j) = g;
    }
  }
  return gains;
}

ChannelGains compute_gains(const NetworkConfig& config, const NodeLayout& layout,
                           std::uint64_t instance) {
  rng::StreamRng fading_gen(config.seed, instance, rng::Stream::fading);
  return compute_gains(layout, config.attenuation, config.fading, fading_gen);
}

RateMatrix rate_matrix(const ChannelGains& gains) {
  const std::size_t n = gains.n;
  RateMatrix s;
  s.n = n;
  s.s.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s.at(i, i) = half_log_rate(gains.snr[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s.at(i, j) = half_log_rate(gains.inr_at(i, j));
  }
  return s;
}

std::vector<double> diagonal_rates(const NetworkConfig& config, std::uint64_t instance) {
  const NodeLayout layout = sample_layout(config, instance);
  rng::StreamRng fading_gen(config.seed, instance, rng::Stream::fading);
  std::vector<double> rates(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    double g = config.attenuation.gain(distance(layout.tx_at(i), layout.rx_at(i), layout.dim));
    if (config.fading == FadingMode::rayleigh) g *= fading_gen.exponential();
    rates[i] = half_log_rate(g);
  }
  return rates;
}

LimitEstimate estimate_e(const NetworkConfig& config, std::uint64_t samples) {
  config.validate();
  if (samples == 0) throw ConfigError("estimate_e needs a positive sample count");

  rng::StreamRng gen(config.seed, 0, rng::Stream::estimate);
  std::vector<double> tx_point, rx_point;
  // Welford: a constant stream keeps m2 exactly zero, so degenerate
  // geometries report std_err == 0.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t kept = 0, dropped = 0;
  for (std::uint64_t it = 0; it < samples; ++it) {
    tx_point.clear();
    rx_point.clear();
    config.tx_placement.sample(gen, 1, tx_point);
    config.rx_placement.sample(gen, 1, rx_point);
    double g = config.attenuation.gain(distance(tx_point.data(), rx_point.data(), config.dim));
    if (config.fading == FadingMode::rayleigh) g *= gen.exponential();
    const double s = half_log_rate(g);
    if (!std::isfinite(s)) {
      ++dropped;
      continue;
    }
    ++kept;
    const double delta = s - mean;
    mean += delta / static_cast<double>(kept);
    m2 += delta * (s - mean);
  }
  if (kept == 0) throw SimulationError("estimate_e: every summand was non-finite");

  LimitEstimate est;
  est.samples = kept;
  est.dropped = dropped;
  est.e_hat = mean;
  if (kept > 1) {
    const double var = m2 / static_cast<double>(kept - 1);
    est.std_err = var > 0.0 ? std::sqrt(var / static_cast<double>(kept)) : 0.0;
  }
  return est;
}

std::vector<ProbePoint> spatial_separation_probe(const NetworkConfig& config,
                                                 const std::vector<double>& rho_grid,
                                                 std::uint64_t samples) {
  config.validate();
  if (rho_grid.empty()) throw ConfigError("spatial_separation_probe needs a rho grid");
  for (std::size_t k = 0; k < rho_grid.size(); ++k) {
    if (!(rho_grid[k] >= 0.0)) throw ConfigError("rho grid values must be nonnegative");
    if (k > 0 && !(rho_grid[k] > rho_grid[k - 1]))
      throw ConfigError("rho grid must be strictly increasing");
  }
  if (samples == 0) throw ConfigError("spatial_separation_probe needs a positive sample count");

  // One pooled draw set; the resulting curve is a CDF evaluated on the grid.
  rng::StreamRng gen(config.seed, 0, rng::Stream::probe);
  std::vector<double> tx_point, rx_point;
  std::vector<std::uint64_t> hits(rho_grid.size(), 0);
  for (std::uint64_t it = 0; it < samples; ++it) {
    tx_point.clear();
    rx_point.clear();
    config.tx_placement.sample(gen, 1, tx_point);
    config.rx_placement.sample(gen, 1, rx_point);
    const double d = distance(tx_point.data(), rx_point.data(), config.dim);
    for (std::size_t k = 0; k < rho_grid.size(); ++k)
      if (d <= rho_grid[k]) ++hits[k];
  }

  std::vector<ProbePoint> points(rho_grid.size());
  for (std::size_t k = 0; k < rho_grid.size(); ++k)
    points[k] = {rho_grid[k], static_cast<double>(hits[k]) / static_cast<double>(samples)};
  return points;
}

double fit_separation_exponent(const std::vector<ProbePoint>& points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const auto& p : points) {
    if (!(p.prob > 0.0) || !(p.rho > 0.0)) continue;
    const double x = std::log(p.rho);
    const double y = std::log(p.prob);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2)
    throw ConfigError("fit_separation_exponent needs at least two positive-probability points");
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) throw ConfigError("fit_separation_exponent: degenerate rho grid");
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

}  // namespace ianet
