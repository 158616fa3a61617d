#include "ianet/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ianet/errors.hpp"

namespace ianet {

double ia_lower_bound(const RateMatrix& s) {
  if (s.n == 0) throw ConfigError("ia_lower_bound needs at least one user");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) sum += s.at(i, i);
  return sum;
}

double single_user_upper(const ChannelGains& gains) {
  if (gains.n == 0) throw ConfigError("single_user_upper needs at least one user");
  double sum = 0.0;
  for (double g : gains.snr) sum += std::log2(1.0 + g);
  return sum;
}

namespace {

struct Candidate {
  double saving;
  std::uint32_t i;
  std::uint32_t j;
};

}  // namespace

CapacityBracket matching_upper_bound(const ChannelGains& gains, const RateMatrix& s) {
  if (gains.n == 0 || gains.n != s.n)
    throw ConfigError("matching_upper_bound needs matching gains and rates");
  const std::size_t n = gains.n;

  CapacityBracket out;
  out.lower = ia_lower_bound(s);

  std::vector<double> single(n);
  for (std::size_t i = 0; i < n; ++i) single[i] = std::log2(1.0 + gains.snr[i]);

  // A valid pair replaces two single-user terms by one two-user cut; only
  // pairs that actually tighten the bound are candidates.
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(s.at(j, j) <= s.at(j, i))) continue;
      const double pair_term = std::log2(1.0 + gains.snr[i] + gains.inr_at(j, i));
      const double saving = single[i] + single[j] - pair_term;
      if (saving > 0.0)
        candidates.push_back(
            {saving, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.saving != b.saving) return a.saving > b.saving;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<bool> used(n, false);
  double upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) upper += single[i];
  for (const Candidate& c : candidates) {
    if (used[c.i] || used[c.j]) continue;
    used[c.i] = true;
    used[c.j] = true;
    upper -= c.saving;
    out.matched_pairs.emplace_back(c.i, c.j);
  }

  out.upper = upper;
  out.per_user_lower = out.lower / static_cast<double>(n);
  out.per_user_upper = out.upper / static_cast<double>(n);
  return out;
}

}  // namespace ianet
