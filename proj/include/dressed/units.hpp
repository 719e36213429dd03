#pragma once

#include <numbers>

namespace dressed::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Ordinary frequency in kHz (value/2pi) to angular frequency in rad/s.
constexpr double khz_to_rad(double khz) { return two_pi * 1e3 * khz; }
constexpr double rad_to_khz(double rad_per_s) { return rad_per_s / (two_pi * 1e3); }

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace dressed::units
