#pragma once

// Calibration of the transverse static field from the ratio of dressed
// (xi) to undressed (xi = 0) tuning-free precession frequencies measured
// against the nominal omega0x:
//
//   ratio(x) = W(s x, w0z + t s x; xi) / W(s x, w0z + t s x; 0),
//   W(a, b; xi) = sqrt(a^2 + b^2 J0(xi)^2),
//
// with s the omega0x scale factor and t the fraction of the applied
// transverse field that lies along z.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dressed/least_squares.hpp"

namespace dressed {

struct RatioPoint {
  double omega0x_nominal = 0.0;  ///< rad/s
  double ratio = 0.0;
};

struct CalibrationFixed {
  double omega0z = 0.0;  ///< rad/s
  double omega = 0.0;    ///< dressing frequency, rad/s (reported Omega_d = xi omega)
};

struct CalibrationFit {
  double scale = 1.0;
  double tilt = 0.0;
  double xi = 0.0;
  double residual_norm = 0.0;
  std::array<double, 3> std_error{};  ///< scale, tilt, xi
  std::array<double, 3> ci95{};       ///< half widths, 1.96 std_error
  int iterations = 0;

  double omega_d(const CalibrationFixed& f) const { return xi * f.omega; }
};

inline constexpr double max_accepted_tilt = 0.2;

double calibration_ratio(double omega0x_nominal, double omega0z, double scale, double tilt, double xi);

/// Throws Error(DegenerateData) for fewer than 5 points or fewer than 3
/// distinct omega0x values, Error(InvalidData) for ratios outside (0, 1],
/// Error(FitDiverged) and Error(FitRejected) (|tilt| > 0.2).
CalibrationFit calibrate(std::span<const RatioPoint> data, const CalibrationFixed& fixed, const LsqOptions& opts = {});

/// Ratios generated by the model. With noise > 0 both underlying frequency
/// measurements get an independent relative Gaussian error of that size.
std::vector<RatioPoint> synthetic_calibration_data(std::span<const double> omega0x_grid, const CalibrationFixed& fixed,
                                                   double scale, double tilt, double xi, double noise = 0.0,
                                                   std::uint64_t seed = 0);

/// The nominal omega0x grid used for synthetic runs: 0 to 15 kHz in 1 kHz steps.
std::vector<double> default_calibration_grid();

}  // namespace dressed
