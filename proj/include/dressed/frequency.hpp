#pragma once

#include <span>

#include "dressed/propagator.hpp"

namespace dressed {

struct FrequencyEstimate {
  double omega = 0.0;      ///< rad/s
  double std_error = 0.0;  ///< rad/s, from the fit covariance
  double offset = 0.0;
  double amplitude = 0.0;
};

/// Precession frequency of offset + amplitude cos(omega t) in a uniformly
/// sampled signal: spectral peak of the mean-removed signal, refined by
/// nonlinear least squares. Needs >= 3 periods and >= 16 samples per period.
/// Throws Error(NoOscillation) or Error(FitDiverged).
FrequencyEstimate extract_frequency(std::span<const double> times, std::span<const double> values);

/// Uses the sx channel, the only one that carries a single spectral line.
FrequencyEstimate extract_frequency(const CoherenceSeries& series);

}  // namespace dressed
