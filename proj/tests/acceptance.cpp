// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Everything is seeded, so a pass is reproducible bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ianet/bottleneck.hpp"
#include "ianet/bounds.hpp"
#include "ianet/eia.hpp"
#include "ianet/experiments.hpp"
#include "ianet/network.hpp"
#include "ianet/serialize.hpp"

using namespace ianet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

NetworkConfig default_config(std::size_t n, std::uint64_t seed) {
  NetworkConfig config;
  config.n = n;
  config.seed = seed;
  return config;
}

ChannelGains demo_gains(std::size_t k) {
  ChannelGains gains;
  gains.n = k;
  gains.snr.resize(k);
  gains.inr.assign(k * k, 0.0);
  for (std::size_t j = 0; j < k; ++j) gains.snr[j] = 1.0 + 0.5 * static_cast<double>(j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) gains.inr[i * k + j] = 0.7;
  return gains;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Shared between criteria 5 and 7: one default-config sweep.
std::optional<ExperimentReport> default_sweep_report;

Outcome c1_formulas() {
  ChannelGains gains;
  gains.n = 2;
  gains.snr = {4.0, 4.0};
  gains.inr = {0.0, 4.0, 4.0, 0.0};
  const RateMatrix s = rate_matrix(gains);
  const double s_expect = 0.5 * std::log2(9.0);
  const double pair_expect = std::log2(9.0);
  const PairBound pb = pair_sum_bound(gains, s, 0, 1);
  const double lower = ia_lower_bound(s);
  const double rel1 = std::fabs(s.at(0, 0) - s_expect) / s_expect;
  const double rel2 = std::fabs(pb.bound - pair_expect) / pair_expect;
  const double rel3 = std::fabs(lower - 2.0 * s_expect) / (2.0 * s_expect);
  Outcome out;
  out.pass = rel1 <= 1e-9 && rel2 <= 1e-9 && rel3 <= 1e-9 && pb.b3_valid;
  out.detail = "hand values rel err " + fmt(rel1) + "/" + fmt(rel2) + "/" + fmt(rel3);
  return out;
}

Outcome c2_oracle() {
  const double eps_grid[4] = {0.02, 0.1, 0.5, 2.0};
  std::size_t mismatches = 0, links_total = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    NetworkConfig config = default_config(2 + r % 7, 101);
    const NodeLayout layout = sample_layout(config, r);
    const ChannelGains gains = compute_gains(config, layout, r);
    const RateMatrix s = rate_matrix(gains);
    double e = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) e += s.at(i, i);
    e /= static_cast<double>(s.n);
    const double eps = eps_grid[r % 4];

    const BottleneckSet set = detect_bottlenecks(s, e, eps);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> oracle;
    const double cap = e + 0.5 * eps;
    for (std::size_t i = 0; i < s.n; ++i)
      for (std::size_t j = 0; j < s.n; ++j) {
        if (i == j) continue;
        if (s.at(i, i) <= cap && s.at(j, i) <= cap && s.at(j, j) <= s.at(j, i))
          oracle.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    if (set.links != oracle) ++mismatches;
    links_total += set.links.size();
  }
  Outcome out;
  out.pass = mismatches == 0 && links_total > 0;
  out.detail = "0 mismatches required, got " + std::to_string(mismatches) + " over 1000 instances (" +
               std::to_string(links_total) + " links)";
  return out;
}

Outcome c3_pair_bound_invariant() {
  NetworkConfig config = default_config(30, 303);
  const double e_hat = estimate_e(config, 1000000).e_hat;
  const double eps = 0.1;
  const double limit = 2.0 * e_hat + eps + 1e-9;
  std::size_t links_total = 0, violations = 0;
  double worst = -1e300;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    const NodeLayout layout = sample_layout(config, r);
    const ChannelGains gains = compute_gains(config, layout, r);
    const RateMatrix s = rate_matrix(gains);
    const BottleneckSet set = detect_bottlenecks(s, e_hat, eps);
    for (const auto& [i, j] : set.links) {
      const double bound = pair_sum_bound(gains, s, i, j).bound;
      if (bound > limit) ++violations;
      worst = std::max(worst, bound - (2.0 * e_hat + eps));
      ++links_total;
    }
  }
  Outcome out;
  out.pass = violations == 0 && links_total > 0;
  out.detail = std::to_string(links_total) + " links, worst excess " + fmt(worst);
  return out;
}

Outcome c4_bracket_validity() {
  std::size_t violations = 0;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    NetworkConfig config = default_config(1 + r % 200, 404);
    const NodeLayout layout = sample_layout(config, r);
    const ChannelGains gains = compute_gains(config, layout, r);
    const RateMatrix s = rate_matrix(gains);
    const double lower = ia_lower_bound(s);
    const CapacityBracket bracket = matching_upper_bound(gains, s);
    const double single = single_user_upper(gains);
    if (!(lower <= bracket.upper && bracket.upper <= single)) ++violations;
  }
  Outcome out;
  out.pass = violations == 0;
  out.detail = std::to_string(violations) + " ordering violations over 10000 instances";
  return out;
}

Outcome c5_convergence() {
  SweepConfig cfg;
  cfg.base = default_config(2, 505);
  cfg.n_grid = {50, 200, 800};
  cfg.replicates = 200;
  cfg.epsilon = 0.1;
  cfg.e_samples = 1000000;
  const ExperimentReport report = run_sweep(cfg);
  default_sweep_report = report;

  bool nonincreasing = true;
  for (std::size_t k = 1; k < report.rows.size(); ++k)
    nonincreasing = nonincreasing && report.rows[k].dev_prob <= report.rows[k - 1].dev_prob;
  const double final_dev = report.rows.back().dev_prob;
  const double mean_gap = std::fabs(report.rows.back().mean_per_user_lower - report.e_hat);

  Outcome out;
  out.pass = nonincreasing && final_dev <= 0.05 && mean_gap <= 0.02;
  out.detail = "dev prob " + fmt(report.rows[0].dev_prob) + "/" + fmt(report.rows[1].dev_prob) +
               "/" + fmt(final_dev) + ", |mean-e|=" + fmt(mean_gap);
  return out;
}

Outcome c6_variance_slope() {
  SweepConfig cfg;
  cfg.base = default_config(2, 606);
  cfg.n_grid = {50, 100, 200, 400};
  cfg.replicates = 200;
  cfg.epsilon = 0.1;
  cfg.e_samples = 1000000;
  const VarianceFit fit = variance_scaling_experiment(cfg);
  Outcome out;
  out.pass = fit.fitted && fit.slope >= 2.0 && fit.slope <= 3.3;
  out.detail = "log-log slope " + fmt(fit.slope) + " (band [2.0, 3.3])";
  return out;
}

Outcome c7_beta_floor() {
  Outcome out;
  if (!default_sweep_report) {
    out.detail = "default sweep unavailable";
    return out;
  }
  out.pass = true;
  double worst = 1e300;
  for (const ExperimentRow& row : default_sweep_report->rows) {
    const double floor = row.beta_hat - 3.0 * row.beta_std_err;
    worst = std::min(worst, floor);
    out.pass = out.pass && floor > 0.0;
  }
  out.detail = "min over grid of beta-3se = " + fmt(worst);
  return out;
}

Outcome c8_tail() {
  SweepConfig cfg;
  cfg.base = default_config(2, 808);
  cfg.base.attenuation.alpha = 1.0;
  cfg.base.attenuation.rho0 = 0.0;
  cfg.n_grid = {100, 1000, 10000};
  cfg.replicates = 400;
  cfg.epsilon = 0.1;
  cfg.eta = 0.5;
  const auto tail = tail_experiment(cfg);
  std::vector<double> w;
  for (const auto& [n, p] : tail) w.push_back(static_cast<double>(n) * p);
  bool bounded = true;
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k - 1] == 0.0)
      bounded = bounded && w[k] == 0.0;
    else
      bounded = bounded && w[k] <= 2.0 * w[k - 1];
  }

  SweepConfig capped = cfg;
  capped.base = default_config(2, 809);
  capped.base.attenuation.rho0 = 0.9;  // gain <= 0.9^-2, rates below every threshold
  capped.n_grid = {100, 1000};
  capped.replicates = 50;
  bool exact_zero = true;
  for (const auto& [n, p] : tail_experiment(capped)) exact_zero = exact_zero && p == 0.0;

  Outcome out;
  out.pass = bounded && exact_zero;
  out.detail = "n*P = " + fmt(w[0]) + "/" + fmt(w[1]) + "/" + fmt(w[2]) +
               ", capped run zero: " + (exact_zero ? "yes" : "no");
  return out;
}

Outcome c9_independence() {
  NetworkConfig config = default_config(4, 909);
  const double e_hat = estimate_e(config, 1000000).e_hat;
  const CovEstimate cov = empirical_cov_disjoint(config, e_hat, 0.1, 10000);
  Outcome out;
  out.pass = cov.std_err > 0.0 && std::fabs(cov.cov) <= 3.0 * cov.std_err;
  out.detail = "cov " + fmt(cov.cov) + " vs 3se " + fmt(3.0 * cov.std_err);
  return out;
}

Outcome c10_cancellation() {
  struct Combo {
    std::size_t k, q;
    std::uint64_t slots;
  };
  const Combo combos[4] = {{2, 2, 2000}, {2, 4, 5120}, {3, 2, 10240}, {3, 4, 65536}};
  Outcome out;
  out.pass = true;
  double worst_residual = 0.0, worst_amp = 0.0, worst_gap = 0.0;
  std::uint64_t min_pairs = UINT64_MAX;
  for (std::size_t c = 0; c < 4; ++c) {
    EiaConfig cfg;
    cfg.users = combos[c].k;
    cfg.phase_levels = combos[c].q;
    cfg.slots = combos[c].slots;
    cfg.gains = demo_gains(combos[c].k);
    cfg.noise_on = false;
    cfg.seed = 1010 + c;
    const EiaReport report = run_pairing(cfg);
    min_pairs = std::min(min_pairs, report.matched_pairs);
    worst_residual = std::max(worst_residual, report.residual_interference);
    worst_amp = std::max(worst_amp, report.amplitude_rel_err);
    for (double g : measured_rate_gap(report, rate_matrix(cfg.gains)))
      worst_gap = std::max(worst_gap, std::fabs(g));
    out.pass = out.pass && report.matched_pairs >= 100 &&
               report.residual_interference <= 1e-12 && report.amplitude_rel_err <= 1e-9;
  }
  out.pass = out.pass && worst_gap <= 1e-9;
  out.detail = "worst residual " + fmt(worst_residual) + ", amp err " + fmt(worst_amp) +
               ", rate gap " + fmt(worst_gap) + ", min pairs " + std::to_string(min_pairs);
  return out;
}

Outcome c11_rate() {
  EiaConfig cfg;
  cfg.users = 2;
  cfg.phase_levels = 2;
  cfg.slots = 60000;
  cfg.gains.n = 2;
  cfg.gains.snr = {1.5, 1.5};
  cfg.gains.inr = {0.0, 0.8, 1.2, 0.0};
  cfg.noise_on = true;
  cfg.seed = 1111;
  const EiaReport report = run_pairing(cfg);
  double worst = 0.0;
  for (double rate : report.effective_rate_per_user)
    worst = std::max(worst, std::fabs(rate - 1.0));
  Outcome out;
  out.pass = report.matched_pairs >= 1000 && worst <= 0.05;
  out.detail = std::to_string(report.matched_pairs) + " pairs, max |rate-1| = " + fmt(worst);
  return out;
}

Outcome c12_delay() {
  // Brute-force the 16-matrix alphabet: keys must be distinct and the
  // complement an involution, so the wait for one fixed partner is
  // geometric with mean equal to the alphabet size.
  std::set<std::uint64_t> keys;
  bool involution = true;
  for (std::uint32_t code = 0; code < 16; ++code) {
    PhaseMatrix m;
    m.k = 2;
    m.q = 2;
    m.idx = {code & 1u, (code >> 1) & 1u, (code >> 2) & 1u, (code >> 3) & 1u};
    keys.insert(m.key());
    involution = involution && complement_matrix(complement_matrix(m)).idx == m.idx;
  }
  const double oracle_mean = static_cast<double>(keys.size());

  EiaConfig cfg;
  cfg.users = 2;
  cfg.phase_levels = 2;
  cfg.slots = 20000;
  cfg.gains = demo_gains(2);
  cfg.noise_on = false;
  cfg.seed = 1212;
  const EiaReport report = run_pairing(cfg);
  const double rel = std::fabs(report.mean_delay - oracle_mean) / oracle_mean;
  Outcome out;
  out.pass = keys.size() == 16 && involution && rel <= 0.3;
  out.detail = "mean delay " + fmt(report.mean_delay) + " vs oracle " + fmt(oracle_mean) +
               " (rel " + fmt(rel) + ")";
  return out;
}

Outcome c13_converse() {
  SweepConfig cfg;
  cfg.base = default_config(2, 1313);
  cfg.n_grid = {100, 800};
  cfg.replicates = 400;
  cfg.epsilon = 0.1;
  cfg.inflate_margin = cfg.epsilon;  // per-user mean = e_hat + 2 eps
  cfg.e_samples = 1000000;
  const auto points = uv_exceedance_experiment(cfg, RateRule::inflated);
  Outcome out;
  out.pass = points.size() == 2 && points[1].second < points[0].second;
  out.detail = "P(U<=V) " + fmt(points[0].second) + " at n=100 -> " + fmt(points[1].second) +
               " at n=800";
  return out;
}

Outcome c14_reproducibility() {
  SweepConfig cfg;
  cfg.base = default_config(2, 1414);
  cfg.n_grid = {15, 30};
  cfg.replicates = 25;
  cfg.epsilon = 0.1;
  cfg.e_samples = 20000;

  auto render = [](const ExperimentReport& report) {
    std::ostringstream out;
    out << to_json(report).dump() << '\n';
    write_sweep_summary_csv(out, report);
    write_sweep_replicates_csv(out, report);
    return out.str();
  };
  cfg.threads = 1;
  const std::string serial = render(run_sweep(cfg));
  cfg.threads = 4;
  const std::string threaded = render(run_sweep(cfg));
  Outcome out;
  out.pass = serial == threaded;
  out.detail = out.pass ? "1-thread and 4-thread outputs byte-identical"
                        : "outputs differ between worker counts";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C01 closed-form rates and pair bound", c1_formulas},
      {"C02 detector matches brute-force oracle", c2_oracle},
      {"C03 pair bound on every detected link", c3_pair_bound_invariant},
      {"C04 lower <= matching upper <= single-user", c4_bracket_validity},
      {"C05 per-user sum rate concentrates at e_hat", c5_convergence},
      {"C06 bottleneck count variance slope", c6_variance_slope},
      {"C07 bottleneck fraction stays positive", c7_beta_floor},
      {"C08 peak-rate tail stays bounded", c8_tail},
      {"C09 disjoint indicators uncorrelated", c9_independence},
      {"C10 paired slots cancel interference", c10_cancellation},
      {"C11 noisy paired rate near half log2(4)", c11_rate},
      {"C12 matching delay matches geometric oracle", c12_delay},
      {"C13 inflated rates fail U<=V as n grows", c13_converse},
      {"C14 sweep outputs invariant to worker count", c14_reproducibility},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  if (failures > 0) std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
