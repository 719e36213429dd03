#include "dressed/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

#include <fftw3.h>
#include <fmt/format.h>

#include "dressed/least_squares.hpp"
#include "dressed/units.hpp"

namespace dressed {

namespace {

constexpr double min_amplitude = 1e-3;

// Peak of |DFT| of the mean-removed signal, zero padded 8x, with parabolic
// interpolation between bins. Returns (omega, amplitude estimate).
std::pair<double, double> spectral_peak(std::span<const double> values, double dt) {
  const std::size_t n = values.size();
  std::size_t padded = 1;
  while (padded < 8 * n) padded <<= 1;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

  std::vector<double> in(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) in[i] = values[i] - mean;
  std::vector<std::complex<double>> spec(padded / 2 + 1);
  // only fftw_execute is thread safe
  static std::mutex planner;
  fftw_plan plan;
  {
    std::lock_guard lock(planner);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(padded), in.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner);
    fftw_destroy_plan(plan);
  }

  std::size_t best = 1;
  for (std::size_t k = 1; k < spec.size(); ++k)
    if (std::abs(spec[k]) > std::abs(spec[best])) best = k;
  double shift = 0.0;
  if (best > 0 && best + 1 < spec.size()) {
    const double a = std::abs(spec[best - 1]);
    const double b = std::abs(spec[best]);
    const double c = std::abs(spec[best + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) shift = 0.5 * (a - c) / denom;
  }
  const double omega = units::two_pi * (static_cast<double>(best) + shift) / (static_cast<double>(padded) * dt);
  const double amplitude = 2.0 * std::abs(spec[best]) / static_cast<double>(n);
  return {omega, amplitude};
}

}  // namespace

FrequencyEstimate extract_frequency(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 16)
    throw Error(ErrorCode::NoOscillation, "need at least 16 equally sized samples");
  const std::size_t n = times.size();
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw Error(ErrorCode::NoOscillation, "sample times must increase");
  const double duration = times.back() - times.front();

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo < 2.0 * min_amplitude)
    throw Error(ErrorCode::NoOscillation, fmt::format("peak-to-peak {:.3g} below threshold", *hi - *lo));

  const auto [omega0, amp0] = spectral_peak(values, dt);
  if (amp0 < min_amplitude)
    throw Error(ErrorCode::NoOscillation, fmt::format("spectral amplitude {:.3g} below threshold", amp0));
  const double periods = omega0 * duration / units::two_pi;
  if (periods < 3.0)
    throw Error(ErrorCode::NoOscillation, fmt::format("series spans only {:.2f} periods", periods));
  const double per_period = units::two_pi / (omega0 * dt);
  if (per_period < 16.0)
    throw Error(ErrorCode::NoOscillation, fmt::format("only {:.1f} samples per period", per_period));

  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  const double t0 = times.front();
  // fit in units where omega0 = 1 keeps the system well conditioned
  auto model = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = times[i] - t0;
      const double arg = p[2] * omega0 * t;
      const double c = std::cos(arg);
      r[i] = p[0] + p[1] * c - values[i];
      if (jac) {
        (*jac)(i, 0) = 1.0;
        (*jac)(i, 1) = c;
        (*jac)(i, 2) = -p[1] * std::sin(arg) * omega0 * t;
      }
    }
  };
  // sign of the amplitude from the first sample
  const double a_init = (values.front() - mean) >= 0.0 ? amp0 : -amp0;
  Eigen::VectorXd p0(3);
  p0 << mean, a_init, 1.0;
  const LsqResult fit = levenberg_marquardt(model, p0);
  if (!fit.converged || !fit.params.allFinite())
    throw Error(ErrorCode::FitDiverged, "frequency refinement did not converge");
  const double relative_shift = std::abs(fit.params[2] - 1.0);
  if (relative_shift * duration * omega0 > units::two_pi)
    throw Error(ErrorCode::FitDiverged, "refined frequency left the spectral peak");

  FrequencyEstimate out;
  out.omega = std::abs(fit.params[2]) * omega0;
  out.std_error = std::sqrt(std::max(0.0, fit.covariance(2, 2))) * omega0;
  out.offset = fit.params[0];
  out.amplitude = fit.params[1];
  if (std::abs(out.amplitude) < min_amplitude)
    throw Error(ErrorCode::NoOscillation, fmt::format("fitted amplitude {:.3g} below threshold", out.amplitude));
  return out;
}

FrequencyEstimate extract_frequency(const CoherenceSeries& series) {
  return extract_frequency(series.times, series.sx);
}

}  // namespace dressed
