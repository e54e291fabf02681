#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hsfc {

/// Seeded random stream with pinned output algorithms.
///
/// std::mt19937_64 is bit-exact across platforms by the standard, but the
/// standard distributions are not. This class fixes the mappings itself so
/// generated data streams are portable:
///   - uniform01: top 53 bits of the engine output, scaled to [0, 1)
///   - normal:    Box-Muller on uniform01 pairs (second value cached)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound) {
    // Rejection sampling over the smallest covering power of two.
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
      const std::uint64_t v = engine_() & mask;
      if (v < bound) return v;
    }
  }

  /// Standard normal draw (Box-Muller).
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace hsfc
