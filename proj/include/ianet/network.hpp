#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ianet/attenuation.hpp"
#include "ianet/placement.hpp"
#include "ianet/rng.hpp"

namespace ianet {

enum class FadingMode { unit_modulus, rayleigh };

std::string to_string(FadingMode mode);
FadingMode fading_mode_from_string(const std::string& name);

// Full description of the random network ensemble: n transmitter/receiver
// pairs placed independently, power-law attenuation, optional Rayleigh
// fading on every link. `seed` is the root of all randomness; instances are
// indexed substreams, so instance k is reproducible without generating the
// first k-1.
struct NetworkConfig {
  std::size_t n = 1;
  std::size_t dim = 2;
  PlacementSpec tx_placement = PlacementSpec::uniform_box_spec({1.0, 1.0});
  PlacementSpec rx_placement = PlacementSpec::uniform_box_spec({1.0, 1.0});
  AttenuationSpec attenuation;
  FadingMode fading = FadingMode::unit_modulus;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError

  bool operator==(const NetworkConfig&) const = default;
};

// One sampled set of node positions, row-major [node][axis].
struct NodeLayout {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> tx;
  std::vector<double> rx;

  const double* tx_at(std::size_t i) const { return tx.data() + i * dim; }
  const double* rx_at(std::size_t i) const { return rx.data() + i * dim; }

  bool operator==(const NodeLayout&) const = default;
};

// Link gains for one instance. inr is row-major n*n with the convention
// inr_at(i, j) = gain from transmitter i at receiver j; the diagonal is
// unused (kept zero) since direct gains live in snr.
struct ChannelGains {
  std::size_t n = 0;
  std::vector<double> snr;
  std::vector<double> inr;

  double inr_at(std::size_t i, std::size_t j) const { return inr[i * n + j]; }
  double& inr_at(std::size_t i, std::size_t j) { return inr[i * n + j]; }

  bool operator==(const ChannelGains&) const = default;
};

// Half-log rate variables: at(i, i) = 1/2 log2(1 + 2 snr_i),
// at(i, j) = 1/2 log2(1 + 2 inr_ij) off the diagonal.
struct RateMatrix {
  std::size_t n = 0;
  std::vector<double> s;

  double at(std::size_t i, std::size_t j) const { return s[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return s[i * n + j]; }

  bool operator==(const RateMatrix&) const = default;
};

struct LimitEstimate {
  double e_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;  // summands kept
  std::uint64_t dropped = 0;  // non-finite summands discarded

  bool operator==(const LimitEstimate&) const = default;
};

struct ProbePoint {
  double rho = 0.0;
  double prob = 0.0;

  bool operator==(const ProbePoint&) const = default;
};

double half_log_rate(double gain);

NodeLayout sample_layout(const NetworkConfig& config, std::uint64_t instance);

// Gains from an explicit layout; fading draws come from `fading_gen` in a
// fixed order: the n direct links first, then cross links row-major. The
// order is what lets diagonal_rates below reproduce direct rates cheaply.
ChannelGains compute_gains(const NodeLayout& layout, const AttenuationSpec& attenuation,
                           FadingMode fading, rng::StreamRng& fading_gen);

// Convenience: layout's instance streams derived from the config.
ChannelGains compute_gains(const NetworkConfig& config, const NodeLayout& layout,
                           std::uint64_t instance);

RateMatrix rate_matrix(const ChannelGains& gains);

// Direct rates s_ii only, skipping the n^2 cross links. Identical to the
// diagonal of the full pipeline for the same (config, instance).
std::vector<double> diagonal_rates(const NetworkConfig& config, std::uint64_t instance);

// Monte Carlo estimate of E = lim E[per-user capacity] = E[1/2 log2(1+2 SNR)]
// over fresh single-pair draws.
LimitEstimate estimate_e(const NetworkConfig& config, std::uint64_t samples);

// P(tx-rx distance <= rho) for each grid value, one pooled sample set.
// Grid must be nonnegative and strictly increasing.
std::vector<ProbePoint> spatial_separation_probe(const NetworkConfig& config,
                                                 const std::vector<double>& rho_grid,
                                                 std::uint64_t samples);

// Least-squares slope of log prob vs log rho over positive-probability
// points; needs at least two of them.
double fit_separation_exponent(const std::vector<ProbePoint>& points);

}  // namespace ianet
