#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ianet/network.hpp"

namespace ianet {

// Rate vector fed to the U/V statistics in sweeps:
//   ia        realized direct rates s_ii (achievable)
//   inflated  fixed quadratic profile r_i proportional to (i+1)^2, scaled so
//             the per-user mean is e_hat + epsilon + inflate_margin; sits
//             above the achievable region, so P(U <= V) must vanish with n
enum class RateRule { ia, inflated };

std::string to_string(RateRule rule);
RateRule rate_rule_from_string(const std::string& name);

struct SweepConfig {
  NetworkConfig base;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 1;
  double epsilon = 0.1;
  double eta = 0.5;
  std::uint64_t e_samples = 1000000;
  RateRule rate_rule = RateRule::inflated;
  double inflate_margin = 0.1;
  unsigned threads = 1;

  void validate() const;  // throws ConfigError
};

// One (n, replicate) cell of a sweep.
struct ReplicateRecord {
  std::size_t n = 0;
  std::size_t replicate = 0;
  double sum_lower = 0.0;
  double sum_upper = 0.0;
  double max_s_ii = 0.0;
  std::uint64_t bottleneck_count = 0;
  double u = 0.0;
  double v = 0.0;

  bool operator==(const ReplicateRecord&) const = default;
};

// Per-n aggregates over replicates.
struct ExperimentRow {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mean_per_user_lower = 0.0;
  double mean_per_user_upper = 0.0;
  double dev_prob = 0.0;    // P(|lower/n - e_hat| > epsilon)
  double tail_prob = 0.0;   // P(max s_ii > n^(eta/2))
  double beta_hat = 0.0;    // mean bottleneck fraction
  double beta_std_err = 0.0;
  double var_count = 0.0;   // sample variance of the bottleneck count
  double uv_rate = 0.0;     // P(U <= V)

  bool operator==(const ExperimentRow&) const = default;
};

struct ExperimentReport {
  double e_hat = 0.0;
  double e_std_err = 0.0;
  std::uint64_t e_samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double eta = 0.0;
  std::string rate_rule;
  bool single_replicate = false;  // var_count is not meaningful
  std::vector<ExperimentRow> rows;
  std::vector<ReplicateRecord> records;

  bool operator==(const ExperimentReport&) const = default;
};

// One pass over the (n, replicate) grid computing every per-instance
// statistic; replicate index doubles as the instance index, so all n share
// common random numbers across the grid. e_hat is estimated once.
ExperimentReport run_sweep(const SweepConfig& config);

// Lean tail estimate: only direct rates are generated (same draws as the
// full pipeline), so n up to 1e4 stays cheap.
std::vector<std::pair<std::size_t, double>> tail_experiment(const SweepConfig& config);

struct VarianceFit {
  bool fitted = false;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<std::pair<std::size_t, double>> variances;
};

// Log-log fit of Var(bottleneck count) against n. Zero-variance rows cannot
// enter the fit; if fewer than two rows remain the fit is skipped.
VarianceFit variance_scaling_experiment(const SweepConfig& config);

std::vector<std::pair<std::size_t, double>> uv_exceedance_experiment(const SweepConfig& config,
                                                                     RateRule rule);

// The fixed profile used by RateRule::inflated.
std::vector<double> inflated_rate_profile(std::size_t n, double target_mean);

}  // namespace ianet
