#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ianet::rng {

// Substream roles. Every random quantity in the library draws from a stream
// keyed by (seed, instance, role), so adding draws to one role never shifts
// another role's sequence.
enum class Stream : std::uint64_t {
  layout_tx = 1,
  layout_rx = 2,
  fading = 3,
  phase = 4,
  symbols = 5,
  noise = 6,
  estimate = 7,
  probe = 8,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ seeded through a splitmix64 chain over the stream key.
// Distributions below are implemented by hand (not <random>) so that
// sequences are bit-identical across standard libraries and platforms.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t instance, Stream role) {
    std::uint64_t chain = seed;
    (void)splitmix64(chain);
    chain ^= 0x6a09e667f3bcc909ULL * (instance + 1);
    (void)splitmix64(chain);
    chain ^= static_cast<std::uint64_t>(role) * 0xbb67ae8584caa73bULL;
    for (auto& word : s_) word = splitmix64(chain);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; u is pushed into (0, 1] so the log stays finite.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = 1.0 - uniform01();
    const double v = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 6.283185307179586476925286766559 * v;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Circularly symmetric complex normal, unit total variance.
  // |z|^2 is Exp(1), which is exactly the squared Rayleigh fading gain.
  std::complex<double> cgaussian() {
    const double u = 1.0 - uniform01();
    const double v = uniform01();
    const double radius = std::sqrt(-std::log(u));
    const double angle = 6.283185307179586476925286766559 * v;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  // Exp(1) via inversion.
  double exponential() { return -std::log(1.0 - uniform01()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ianet::rng
