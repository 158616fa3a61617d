#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ianet/network.hpp"
#include "ianet/rng.hpp"

namespace ianet {

// Quantized phase pattern for one slot: k*k entries over {0, ..., q-1},
// entry (i, j) rotating the link from transmitter i to receiver j. q must be
// even so every phase has an exact opposite.
struct PhaseMatrix {
  std::size_t k = 0;
  std::size_t q = 0;
  std::vector<std::uint32_t> idx;

  std::uint32_t at(std::size_t i, std::size_t j) const { return idx[i * k + j]; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return idx[i * k + j]; }

  // Packs the entries into one integer for buffer lookup. Requires
  // k^2 * ceil(log2 q) <= 63, checked by EiaConfig::validate.
  std::uint64_t key() const;

  bool operator==(const PhaseMatrix&) const = default;
};

PhaseMatrix draw_phase_matrix(std::size_t k, std::size_t q, rng::StreamRng& gen);

// Same diagonal, every off-diagonal entry shifted by q/2. Pairing a slot
// with its complement cancels each cross term exactly and doubles the
// desired one.
PhaseMatrix complement_matrix(const PhaseMatrix& m);

struct EiaConfig {
  std::size_t users = 2;
  std::size_t phase_levels = 2;
  std::uint64_t slots = 0;
  ChannelGains gains;
  bool noise_on = true;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

enum class SlotStatus { stored, matched, idle };

// Per-slot trace entry. `partner` is the earlier slot consumed by a match
// and only meaningful when status == matched.
struct SlotRecord {
  std::uint64_t slot = 0;
  std::uint64_t key = 0;
  SlotStatus status = SlotStatus::stored;
  std::uint64_t partner = 0;
};

struct EiaReport {
  std::size_t users = 0;
  bool noise_on = true;
  std::uint64_t slots = 0;
  std::uint64_t matched_pairs = 0;
  bool no_matches = true;
  double matched_fraction = 0.0;  // slots consumed by matches / total slots
  double mean_delay = 0.0;        // slots between the two halves of a pair
  // Worst relative residual cross-term amplitude over matched pairs; exactly
  // zero when the complement construction cancels.
  double residual_interference = 0.0;
  // Worst relative deviation of the combined desired amplitude from twice
  // the single-slot amplitude.
  double amplitude_rel_err = 0.0;
  std::vector<double> effective_rate_per_user;

  bool operator==(const EiaReport&) const = default;
};

// Plays `slots` slots of the pairing scheme: each slot draws a phase matrix;
// if its complement is pending the two slots combine (decode), else the slot
// itself goes pending unless its own key is already taken (idle). At most
// one pending slot per matrix, so matching delay is the geometric waiting
// time for one specific matrix out of q^(k^2).
EiaReport run_pairing(const EiaConfig& config, std::vector<SlotRecord>* trace = nullptr);

// Difference between each user's measured effective rate and its rate-matrix
// entry s_ii; requires a report with at least one matched pair.
std::vector<double> measured_rate_gap(const EiaReport& report, const RateMatrix& s);

}  // namespace ianet
