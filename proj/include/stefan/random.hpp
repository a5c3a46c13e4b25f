#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace stefan {

// Draws are built directly on the mt19937_64 output stream instead of the
// std distributions, whose algorithms differ between standard libraries.
// A fixed seed therefore reproduces the same noise on every platform.

/// Uniform draw in (0, 1], 53-bit resolution.
inline double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal draw via the Box-Muller transform (two uniforms per call).
inline double standard_normal(std::mt19937_64& engine) {
  const double u1 = uniform_unit(engine);
  const double u2 = uniform_unit(engine);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace stefan
