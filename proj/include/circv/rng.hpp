#pragma once

#include <cstdint>

namespace circv {

/// splitmix64: tiny 64-bit generator with a fixed, platform-independent
/// output sequence. Sampling must reproduce byte-identical reports for a
/// given seed, so we avoid std::uniform_real_distribution (its mapping is
/// implementation-defined).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

private:
  std::uint64_t state_;
};

}  // namespace circv
