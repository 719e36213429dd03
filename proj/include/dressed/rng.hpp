#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dressed {

/// Reproducible generator for synthetic data: the 64-bit linear
/// congruential recurrence x <- 6364136223846793005 x + 1442695040888963407
/// (mod 2^64). Uniform variates take the top 53 bits; normal variates use
/// the Box-Muller transform on two consecutive uniforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

}  // namespace dressed
