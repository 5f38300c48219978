#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace raa {

/// Seeded generator. Every draw is a fixed function of the mt19937_64 output
/// stream, so sequences match across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t reject_below = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= reject_below) return static_cast<std::size_t>(r % bound);
    }
  }

  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace raa
