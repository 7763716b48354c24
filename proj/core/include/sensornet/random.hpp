#pragma once

#include <cstdint>
#include <limits>

namespace sensornet {

/// PCG32 (PCG-XSH-RR, 64-bit state, 32-bit output) as published by
/// M. O'Neill. Seeding follows pcg32_srandom_r so that streams are
/// reproducible from any language given (seed, stream).
///
/// Satisfies UniformRandomBitGenerator, but library code only draws through
/// the member helpers below: std distributions are implementation-defined and
/// would break cross-platform determinism.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Two consecutive outputs, first one in the high word.
  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, bound) (rejection as in pcg32_boundedrand_r).
  std::uint32_t below(std::uint32_t bound) noexcept;

  /// Standard normal deviate (Box-Muller, no cached second value).
  double normal() noexcept;

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

}  // namespace sensornet
