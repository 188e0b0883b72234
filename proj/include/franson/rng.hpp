#pragma once

#include <cmath>
#include <cstdint>

namespace franson {

/// 64-bit finalizer (splitmix64 mixing function); a bijection on u64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Splittable counter-based generator: every stream owns a distinct odd
/// increment, so streams derived from (seed, index) are independent and the
/// draw sequence does not depend on evaluation order across streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t gamma = 0x9E3779B97F4A7C15ULL)
      : state_(seed), gamma_(gamma | 1ULL) {}

  /// Stream derived from a master seed and a stream index.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index)),
                      mix64(index * 0xD1B54A32D192ED03ULL + seed));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += gamma_);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Exponential with the given scale (mean).
  double next_exponential(double scale) {
    return -scale * std::log1p(-next_double());
  }

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace franson
