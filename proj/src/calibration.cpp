#include "dressed/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "dressed/errors.hpp"
#include "dressed/rng.hpp"
#include "dressed/special_functions.hpp"
#include "dressed/units.hpp"

namespace dressed {

double calibration_ratio(double x, double omega0z, double scale, double tilt, double xi) {
  const double a = scale * x;
  const double b = omega0z + tilt * scale * x;
  const double j = bessel_j(0, xi);
  return std::sqrt((a * a + b * b * j * j) / (a * a + b * b));
}

CalibrationFit calibrate(std::span<const RatioPoint> data, const CalibrationFixed& fixed, const LsqOptions& opts) {
  if (data.size() < 5)
    throw Error(ErrorCode::DegenerateData, fmt::format("{} data points, need at least 5", data.size()));
  std::set<double> distinct;
  for (const auto& d : data) {
    if (!std::isfinite(d.omega0x_nominal) || !(d.ratio > 0.0 && d.ratio <= 1.0))
      throw Error(ErrorCode::InvalidData, fmt::format("ratio {} outside (0, 1]", d.ratio));
    distinct.insert(d.omega0x_nominal);
  }
  if (distinct.size() < 3)
    throw Error(ErrorCode::DegenerateData,
                fmt::format("{} distinct omega0x values cannot fix scale, tilt and xi", distinct.size()));
  if (!(fixed.omega0z != 0.0)) throw Error(ErrorCode::InvalidData, "omega0z must be nonzero");

  // work with x / omega0z
  std::vector<double> x, ratio;
  for (const auto& d : data) {
    x.push_back(d.omega0x_nominal / fixed.omega0z);
    ratio.push_back(d.ratio);
  }

  // the point closest to omega0x = 0 gives xi through J0
  const auto origin = std::min_element(data.begin(), data.end(), [](const RatioPoint& a, const RatioPoint& b) {
    return std::abs(a.omega0x_nominal) < std::abs(b.omega0x_nominal);
  });
  const double xi0 = origin->ratio < 1.0 ? inverse_j0(origin->ratio) : 0.0;

  auto model = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const double s = p[0];
    const double t = p[1];
    const double xi = p[2];
    const double j0 = bessel_j(0, xi);
    const double dj0 = -bessel_j(1, xi);
    r.resize(static_cast<Eigen::Index>(x.size()));
    if (jac) jac->resize(r.size(), 3);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double a = s * x[i];
      const double b = 1.0 + t * s * x[i];
      const double num = a * a + b * b * j0 * j0;
      const double den = a * a + b * b;
      const double value = std::sqrt(num / den);
      r[i] = value - ratio[i];
      if (!jac) continue;
      // d value = value/2 (d num / num - d den / den)
      auto d = [&](double dnum, double dden) { return 0.5 * value * (dnum / num - dden / den); };
      const double da_ds = x[i];
      const double db_ds = t * x[i];
      const double db_dt = s * x[i];
      (*jac)(i, 0) = d(2 * a * da_ds + 2 * b * db_ds * j0 * j0, 2 * a * da_ds + 2 * b * db_ds);
      (*jac)(i, 1) = d(2 * b * db_dt * j0 * j0, 2 * b * db_dt);
      (*jac)(i, 2) = d(2 * b * b * j0 * dj0, 0.0);
    }
  };

  Eigen::VectorXd p0(3);
  p0 << 1.0, 0.0, xi0;
  const LsqResult fit = levenberg_marquardt(model, p0, opts);
  if (!fit.converged || !fit.params.allFinite())
    throw Error(ErrorCode::FitDiverged, fmt::format("no convergence after {} iterations", fit.iterations));

  CalibrationFit out;
  out.scale = fit.params[0];
  out.tilt = fit.params[1];
  out.xi = std::abs(fit.params[2]);
  out.residual_norm = fit.residual_norm;
  out.iterations = fit.iterations;
  for (int i = 0; i < 3; ++i) {
    out.std_error[i] = std::sqrt(std::max(0.0, fit.covariance(i, i)));
    out.ci95[i] = 1.96 * out.std_error[i];
  }
  if (std::abs(out.tilt) > max_accepted_tilt)
    throw Error(ErrorCode::FitRejected, fmt::format("fitted tilt {:.4g} outside [-0.2, 0.2]", out.tilt));
  return out;
}

std::vector<RatioPoint> synthetic_calibration_data(std::span<const double> grid, const CalibrationFixed& fixed,
                                                   double scale, double tilt, double xi, double noise,
                                                   std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<RatioPoint> out;
  out.reserve(grid.size());
  for (const double x : grid) {
    double r = calibration_ratio(x, fixed.omega0z, scale, tilt, xi);
    if (noise > 0.0) {
      const double dressed = 1.0 + noise * rng.normal();
      const double bare = 1.0 + noise * rng.normal();
      r *= dressed / bare;
    }
    out.push_back({x, r});
  }
  return out;
}

std::vector<double> default_calibration_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 15; ++k) g.push_back(units::khz_to_rad(k));
  return g;
}

}  // namespace dressed
