#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ianet/network.hpp"

namespace ianet {

// Achievable sum rate: every user runs the alignment scheme at its direct
// rate, sum of s_ii.
double ia_lower_bound(const RateMatrix& s);

// Interference-free upper bound: sum of log2(1 + snr_i), one full-rate
// single-user channel each.
double single_user_upper(const ChannelGains& gains);

// Upper bound from greedily matching users into disjoint two-user cuts.
// Matched pair (i, j) contributes log2(1 + snr_i + inr_ji), unmatched users
// contribute their single-user term; candidates require B3 and a positive
// saving, picked by saving (descending) with lexicographic (i, j) ties.
struct CapacityBracket {
  double lower = 0.0;
  double upper = 0.0;
  double per_user_lower = 0.0;
  double per_user_upper = 0.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> matched_pairs;

  bool operator==(const CapacityBracket&) const = default;
};

CapacityBracket matching_upper_bound(const ChannelGains& gains, const RateMatrix& s);

}  // namespace ianet
