#include "ianet/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "ianet/bottleneck.hpp"
#include "ianet/bounds.hpp"
#include "ianet/errors.hpp"
#include "ianet/parallel.hpp"

namespace ianet {

std::string to_string(RateRule rule) { return rule == RateRule::ia ? "ia" : "inflated"; }

RateRule rate_rule_from_string(const std::string& name) {
  if (name == "ia") return RateRule::ia;
  if (name == "inflated") return RateRule::inflated;
  throw ConfigError("unknown rate_rule '" + name + "'");
}

void SweepConfig::validate() const {
  base.validate();
  if (n_grid.empty()) throw ConfigError("sweep needs a nonempty n grid");
  for (std::size_t n : n_grid)
    if (n < 2) throw ConfigError("sweep grid entries must be at least 2");
  if (replicates < 1) throw ConfigError("sweep needs at least one replicate");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(eta > 0.0) || !(eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
  if (e_samples == 0) throw ConfigError("sweep needs a positive e_samples");
  if (!(inflate_margin > 0.0)) throw ConfigError("inflate_margin must be positive");
}

std::vector<double> inflated_rate_profile(std::size_t n, double target_mean) {
  // Quadratic ramp, fixed before any network draw; only its mean is tuned.
  std::vector<double> r(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>((i + 1) * (i + 1));
    r[i] = w;
    total += w;
  }
  const double scale = target_mean * static_cast<double>(n) / total;
  for (double& v : r) v *= scale;
  return r;
}

ExperimentReport run_sweep(const SweepConfig& config) {
  config.validate();

  ExperimentReport report;
  const LimitEstimate est = estimate_e(config.base, config.e_samples);
  report.e_hat = est.e_hat;
  report.e_std_err = est.std_err;
  report.e_samples = est.samples;
  report.seed = config.base.seed;
  report.epsilon = config.epsilon;
  report.eta = config.eta;
  report.rate_rule = to_string(config.rate_rule);
  report.single_replicate = config.replicates < 2;

  const double uv_target = report.e_hat + config.epsilon + config.inflate_margin;

  for (std::size_t n : config.n_grid) {
    NetworkConfig cfg = config.base;
    cfg.n = n;
    const double tail_threshold =
        std::pow(static_cast<double>(n), 0.5 * config.eta);
    const std::vector<double> inflated =
        config.rate_rule == RateRule::inflated ? inflated_rate_profile(n, uv_target)
                                               : std::vector<double>{};

    std::vector<ReplicateRecord> records(config.replicates);
    parallel_for_index(config.replicates, config.threads, [&](std::size_t r) {
      const NodeLayout layout = sample_layout(cfg, r);
      const ChannelGains gains = compute_gains(cfg, layout, r);
      const RateMatrix s = rate_matrix(gains);
      const CapacityBracket bracket = matching_upper_bound(gains, s);
      const BottleneckSet set = detect_bottlenecks(s, report.e_hat, config.epsilon);

      ReplicateRecord rec;
      rec.n = n;
      rec.replicate = r;
      rec.sum_lower = bracket.lower;
      rec.sum_upper = bracket.upper;
      rec.max_s_ii = 0.0;
      for (std::size_t i = 0; i < n; ++i) rec.max_s_ii = std::max(rec.max_s_ii, s.at(i, i));
      rec.bottleneck_count = set.links.size();

      UVStats uv;
      if (config.rate_rule == RateRule::inflated) {
        uv = uv_statistics(set, inflated);
      } else {
        std::vector<double> diag(n);
        for (std::size_t i = 0; i < n; ++i) diag[i] = s.at(i, i);
        uv = uv_statistics(set, diag);
      }
      rec.u = uv.u;
      rec.v = uv.v;
      records[r] = rec;
    });

    ExperimentRow row;
    row.n = n;
    row.replicates = config.replicates;
    const double m = static_cast<double>(config.replicates);
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    double frac_sum = 0.0, frac_sq = 0.0, count_sum = 0.0, count_sq = 0.0;
    for (const ReplicateRecord& rec : records) {
      row.mean_per_user_lower += rec.sum_lower / static_cast<double>(n);
      row.mean_per_user_upper += rec.sum_upper / static_cast<double>(n);
      if (std::abs(rec.sum_lower / static_cast<double>(n) - report.e_hat) > config.epsilon)
        row.dev_prob += 1.0;
      if (rec.max_s_ii > tail_threshold) row.tail_prob += 1.0;
      const double count = static_cast<double>(rec.bottleneck_count);
      const double frac = count / pairs;
      frac_sum += frac;
      frac_sq += frac * frac;
      count_sum += count;
      count_sq += count * count;
      if (rec.u <= rec.v) row.uv_rate += 1.0;
    }
    row.mean_per_user_lower /= m;
    row.mean_per_user_upper /= m;
    row.dev_prob /= m;
    row.tail_prob /= m;
    row.uv_rate /= m;
    row.beta_hat = frac_sum / m;
    if (config.replicates > 1) {
      const double frac_var =
          std::max(0.0, (frac_sq - frac_sum * frac_sum / m) / (m - 1.0));
      row.beta_std_err = std::sqrt(frac_var / m);
      row.var_count = std::max(0.0, (count_sq - count_sum * count_sum / m) / (m - 1.0));
    }
    report.rows.push_back(row);
    report.records.insert(report.records.end(), records.begin(), records.end());
  }
  return report;
}

std::vector<std::pair<std::size_t, double>> tail_experiment(const SweepConfig& config) {
  config.validate();
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t n : config.n_grid) {
    NetworkConfig cfg = config.base;
    cfg.n = n;
    const double threshold = std::pow(static_cast<double>(n), 0.5 * config.eta);
    std::vector<std::uint8_t> hit(config.replicates, 0);
    parallel_for_index(config.replicates, config.threads, [&](std::size_t r) {
      const std::vector<double> diag = diagonal_rates(cfg, r);
      const double peak = *std::max_element(diag.begin(), diag.end());
      hit[r] = peak > threshold ? 1 : 0;
    });
    double sum = 0.0;
    for (std::uint8_t h : hit) sum += h;
    out.emplace_back(n, sum / static_cast<double>(config.replicates));
  }
  return out;
}

VarianceFit variance_scaling_experiment(const SweepConfig& config) {
  if (config.n_grid.size() < 3)
    throw ConfigError("variance scaling needs at least three grid points");
  if (config.replicates < 50)
    throw ConfigError("variance scaling needs at least 50 replicates");
  const ExperimentReport report = run_sweep(config);

  VarianceFit fit;
  for (const ExperimentRow& row : report.rows) fit.variances.emplace_back(row.n, row.var_count);

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const auto& [n, var] : fit.variances) {
    if (!(var > 0.0)) continue;  // zero variance has no log point
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(var);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return fit;  // fit skipped, reported as-is
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / static_cast<double>(m);
  fit.fitted = true;
  return fit;
}

std::vector<std::pair<std::size_t, double>> uv_exceedance_experiment(const SweepConfig& config,
                                                                     RateRule rule) {
  SweepConfig cfg = config;
  cfg.rate_rule = rule;
  const ExperimentReport report = run_sweep(cfg);
  std::vector<std::pair<std::size_t, double>> out;
  for (const ExperimentRow& row : report.rows) out.emplace_back(row.n, row.uv_rate);
  return out;
}

}  // namespace ianet
