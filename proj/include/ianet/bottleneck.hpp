#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ianet/network.hpp"

namespace ianet {

// Ordered link (i, j), i != j, is an eps-bottleneck when all three hold
// (non-strict):
//   B1  s_ii <= e_used + eps/2      (own direct rate near the mean)
//   B2  s_ji <= e_used + eps/2      (interference arriving at receiver i)
//   B3  s_jj <= s_ji                (j heard at least as well at receiver i)
// B1 and B2 bound exactly the two powers entering the two-user cut at
// receiver i, which is what makes pair_sum_bound <= 2 e_used + eps hold on
// every bottleneck link.
bool is_bottleneck(const RateMatrix& s, double e_used, double epsilon, std::size_t i,
                   std::size_t j);

struct BottleneckSet {
  std::size_t n = 0;
  double e_used = 0.0;
  double epsilon = 0.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;

  // Fraction of the n(n-1) ordered pairs that are bottlenecks.
  double beta_hat() const;

  bool operator==(const BottleneckSet&) const = default;
};

// Scans all n(n-1) ordered pairs.
BottleneckSet detect_bottlenecks(const RateMatrix& s, double e_used, double epsilon);

// U-V pair for a rate vector r: U averages r_i + r_j over ordered pairs with
// the bottleneck indicator applied, V = beta_hat * (2 e_used + eps). The
// converse argument needs U <= V to fail with vanishing probability only
// when r exceeds the achievable mean.
struct UVStats {
  double u = 0.0;
  double v = 0.0;
  std::uint64_t count = 0;
  double beta_hat = 0.0;

  bool operator==(const UVStats&) const = default;
};

UVStats uv_statistics(const BottleneckSet& set, std::span<const double> rates);

// Two-user cut bound for link (i, j): r_i + r_j <= log2(1 + snr_i + inr_ji)
// whenever B3 holds for (i, j).
struct PairBound {
  double bound = 0.0;
  bool b3_valid = false;

  bool operator==(const PairBound&) const = default;
};

PairBound pair_sum_bound(const ChannelGains& gains, const RateMatrix& s, std::size_t i,
                         std::size_t j);

// Empirical covariance of two bottleneck indicators on index-disjoint pairs
// across independent instances. The variance bound for the bottleneck count
// rests on this being zero.
struct CovEstimate {
  double cov = 0.0;
  double std_err = 0.0;
  double mean_first = 0.0;
  double mean_second = 0.0;
  std::uint64_t replicates = 0;

  bool operator==(const CovEstimate&) const = default;
};

CovEstimate empirical_cov_disjoint(const NetworkConfig& config, double e_used, double epsilon,
                                   std::uint64_t replicates,
                                   std::array<std::size_t, 4> indices = {0, 1, 2, 3},
                                   unsigned threads = 1);

}  // namespace ianet
