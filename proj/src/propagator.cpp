#include "dressed/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dressed/units.hpp"

namespace dressed {

void IntegratorControl::check() const {
  if (steps_per_period < 64) throw std::invalid_argument("IntegratorControl: steps_per_period must be >= 64");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("IntegratorControl: rel_tol must be > 0");
  if (max_refinements < 1) throw std::invalid_argument("IntegratorControl: max_refinements must be >= 1");
  if (!(unitarity_drift_limit > 0.0))
    throw std::invalid_argument("IntegratorControl: unitarity_drift_limit must be > 0");
}

DriveField::DriveField(const DimensionlessParams& d) : static_(d.static_ratio), xi_(d.xi) {
  for (const auto& t : d.tuning) terms_.push_back({static_cast<int>(t.axis), t.amplitude, t.harmonic, t.phase});
}

Vec3 DriveField::operator()(double tau) const {
  Vec3 b = static_;
  b[0] += xi_ * std::cos(tau);
  for (const auto& t : terms_) b[t.axis] += t.amplitude * std::cos(t.harmonic * tau + t.phase);
  return b;
}

Spinor sigma_x_eigenstate() {
  const double r = 1.0 / std::sqrt(2.0);
  return Spinor(r, r);
}

namespace {

using Complex = std::complex<double>;

// d psi / d tau = -i/2 (b.sigma) psi, column by column for matrices
template <class M>
M schrodinger(const Vec3& b, const M& psi) {
  const Complex mi(0.0, -0.5);
  const Complex up(b[0], -b[1]);
  const Complex down(b[0], b[1]);
  M out(psi.rows(), psi.cols());
  for (int c = 0; c < psi.cols(); ++c) {
    out(0, c) = mi * (b[2] * psi(0, c) + up * psi(1, c));
    out(1, c) = mi * (down * psi(0, c) - b[2] * psi(1, c));
  }
  return out;
}

// dM / d tau = b x M, column by column
template <class M>
M bloch(const Vec3& b, const M& m) {
  M out(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    out(0, c) = b[1] * m(2, c) - b[2] * m(1, c);
    out(1, c) = b[2] * m(0, c) - b[0] * m(2, c);
    out(2, c) = b[0] * m(1, c) - b[1] * m(0, c);
  }
  return out;
}

// Classical RK4 from tau_a to tau_b in `steps` equal steps.
template <class State, class Deriv>
State integrate(const DriveField& field, State y, double tau_a, double tau_b, long steps, Deriv deriv) {
  const double h = (tau_b - tau_a) / static_cast<double>(steps);
  Vec3 b0 = field(tau_a);
  for (long k = 0; k < steps; ++k) {
    const double t = tau_a + static_cast<double>(k) * h;
    const Vec3 bm = field(t + 0.5 * h);
    const Vec3 b1 = field(k + 1 == steps ? tau_b : t + h);
    const State k1 = deriv(b0, y);
    const State k2 = deriv(bm, State(y + (0.5 * h) * k1));
    const State k3 = deriv(bm, State(y + (0.5 * h) * k2));
    const State k4 = deriv(b1, State(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    b0 = b1;
  }
  return y;
}

template <class Deriv, class State>
State one_period(const DriveConfiguration& config, const State& identity, const IntegratorControl& ctl,
                 Deriv deriv, int* steps_used) {
  ctl.check();
  const DriveField field(dimensionless(config));
  int steps = ctl.steps_per_period;
  State prev = integrate(field, identity, 0.0, units::two_pi, steps, deriv);
  for (int r = 0; r < ctl.max_refinements; ++r) {
    steps *= 2;
    State next = integrate(field, identity, 0.0, units::two_pi, steps, deriv);
    const double diff = (next - prev).norm() / std::max(1.0, next.norm());
    prev = std::move(next);
    if (diff <= ctl.rel_tol) {
      if (steps_used) *steps_used = steps;
      return prev;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("one-period propagator not converged to {} with {} steps", ctl.rel_tol, steps));
}

struct SampledRun {
  std::vector<Vec3> values;
  double drift = 0.0;
};

// Integrates over [0, t_end] hitting each sample time exactly. `steps` is
// the number of RK4 steps per dressing period (upper bound on step size).
template <class State, class Deriv, class Observe, class Drift>
SampledRun sampled(const DriveField& field, const State& initial, double omega, double t_end, int samples,
                   long steps, Deriv deriv, Observe observe, Drift drift) {
  SampledRun run;
  run.values.reserve(samples);
  const double max_h = units::two_pi / static_cast<double>(steps);
  State y = initial;
  run.values.push_back(observe(y));
  double tau_prev = 0.0;
  for (int k = 1; k < samples; ++k) {
    const double tau = omega * t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
    const long n = std::max(1L, static_cast<long>(std::ceil((tau - tau_prev) / max_h - 1e-9)));
    y = integrate(field, y, tau_prev, tau, n, deriv);
    tau_prev = tau;
    run.values.push_back(observe(y));
    run.drift = std::max(run.drift, drift(y));
  }
  return run;
}

template <class State, class Deriv, class Observe, class Drift>
CoherenceSeries converged_series(const DriveConfiguration& raw, double t_end, int samples, const State& initial,
                                 const IntegratorControl& ctl, Deriv deriv, Observe observe, Drift drift) {
  ctl.check();
  if (!(t_end > 0.0)) throw std::invalid_argument("propagation: t_end must be > 0");
  if (samples < 2) throw std::invalid_argument("propagation: samples must be >= 2");
  const DriveConfiguration config = validate(raw);
  const DriveField field(dimensionless(config));
  const double omega = config.dressing.omega;

  long steps = ctl.steps_per_period;
  SampledRun prev = sampled(field, initial, omega, t_end, samples, steps, deriv, observe, drift);
  for (int r = 0; r < ctl.max_refinements; ++r) {
    steps *= 2;
    SampledRun next = sampled(field, initial, omega, t_end, samples, steps, deriv, observe, drift);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.values.size(); ++i)
      for (int j = 0; j < 3; ++j) diff = std::max(diff, std::abs(next.values[i][j] - prev.values[i][j]));
    prev = std::move(next);
    if (diff <= ctl.rel_tol) {
      if (prev.drift > ctl.unitarity_drift_limit)
        throw Error(ErrorCode::UnitarityLost,
                    fmt::format("norm drift {:.3g} exceeds limit {:.3g}", prev.drift, ctl.unitarity_drift_limit));
      CoherenceSeries out;
      out.source = SeriesSource::numeric;
      out.spin = config.spin;
      out.max_norm_drift = prev.drift;
      out.steps_per_period = static_cast<int>(steps);
      out.times.resize(samples);
      out.sx.resize(samples);
      out.sy.resize(samples);
      out.sz.resize(samples);
      for (int i = 0; i < samples; ++i) {
        out.times[i] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
        out.sx[i] = prev.values[i][0];
        out.sy[i] = prev.values[i][1];
        out.sz[i] = prev.values[i][2];
      }
      return out;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("time series not converged to {} with {} steps per period", ctl.rel_tol, steps));
}

}  // namespace

Eigen::Matrix2cd propagator_matrix(const DriveConfiguration& config, double tau_end, int steps) {
  if (steps < 1) throw std::invalid_argument("propagator_matrix: steps must be >= 1");
  const DriveField field(dimensionless(config));
  return integrate(field, Eigen::Matrix2cd(Eigen::Matrix2cd::Identity()), 0.0, tau_end, steps,
                   [](const Vec3& b, const Eigen::Matrix2cd& u) { return schrodinger(b, u); });
}

Eigen::Matrix2cd monodromy(const DriveConfiguration& config, const IntegratorControl& ctl, int* steps_used) {
  return one_period(config, Eigen::Matrix2cd(Eigen::Matrix2cd::Identity()), ctl,
                    [](const Vec3& b, const Eigen::Matrix2cd& u) { return schrodinger(b, u); }, steps_used);
}

Eigen::Matrix3d rotation_monodromy(const DriveConfiguration& config, const IntegratorControl& ctl,
                                   int* steps_used) {
  return one_period(config, Eigen::Matrix3d(Eigen::Matrix3d::Identity()), ctl,
                    [](const Vec3& b, const Eigen::Matrix3d& m) { return bloch(b, m); }, steps_used);
}

QuasiEnergy monodromy_quasienergy(const DriveConfiguration& raw, const IntegratorControl& ctl) {
  const DriveConfiguration config = validate(raw);
  const double omega = config.dressing.omega;
  QuasiEnergy q;
  double angle = 0.0;  // Bloch rotation angle per period in [0, 2pi]

  if (config.spin == Spin::half) {
    const Eigen::Matrix2cd u = monodromy(config, ctl, &q.steps_per_period);
    q.monodromy_unitarity_error = (u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm();
    // u = cos(theta) 1 - i sin(theta) n.sigma
    const auto s = pauli();
    double sin2 = 0.0;
    for (const auto& sj : s) sin2 += std::norm(0.5 * (u * sj).trace());
    const double theta = std::atan2(std::sqrt(sin2), 0.5 * u.trace().real());
    angle = 2.0 * theta;
  } else {
    const Eigen::Matrix3d r = rotation_monodromy(config, ctl, &q.steps_per_period);
    q.monodromy_unitarity_error = (r.transpose() * r - Eigen::Matrix3d::Identity()).norm();
    const Eigen::Vector3d axial(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
    angle = std::atan2(0.5 * axial.norm(), 0.5 * (r.trace() - 1.0));
  }
  if (q.monodromy_unitarity_error > ctl.unitarity_drift_limit)
    throw Error(ErrorCode::UnitarityLost,
                fmt::format("monodromy unitarity error {:.3g}", q.monodromy_unitarity_error));

  // rotations by a and 2pi - a about opposite axes are the same observable
  if (angle > std::numbers::pi) angle = units::two_pi - angle;
  q.rotation_angle = angle;
  q.omega_L_numeric = angle * omega / units::two_pi;
  constexpr double edge = 1e-3;
  q.alias_ambiguous = angle < edge || angle > std::numbers::pi - edge;
  return q;
}

CoherenceSeries propagate_spin_half(const DriveConfiguration& config, double t_end, int samples,
                                    const Spinor& initial, const IntegratorControl& ctl) {
  if (config.spin != Spin::half)
    throw std::invalid_argument("propagate_spin_half: configuration is not spin 1/2");
  const double n0 = initial.squaredNorm();
  if (std::abs(n0 - 1.0) > 1e-12) throw std::invalid_argument("propagate_spin_half: initial state must be normalized");
  const auto s = pauli();
  return converged_series(
      config, t_end, samples, initial, ctl, [](const Vec3& b, const Spinor& psi) { return schrodinger(b, psi); },
      [&s](const Spinor& psi) {
        Vec3 v;
        for (int j = 0; j < 3; ++j) v[j] = (psi.adjoint() * s[j] * psi)(0, 0).real();
        return v;
      },
      [](const Spinor& psi) { return std::abs(psi.squaredNorm() - 1.0); });
}

CoherenceSeries propagate_bloch_spin1(const DriveConfiguration& config, double t_end, int samples,
                                      const Vec3& initial, const IntegratorControl& ctl) {
  if (config.spin != Spin::one)
    throw std::invalid_argument("propagate_bloch_spin1: configuration is not spin 1");
  const Eigen::Vector3d m0(initial[0], initial[1], initial[2]);
  const double n0 = m0.norm();
  if (!(n0 > 0.0)) throw std::invalid_argument("propagate_bloch_spin1: initial magnetization must be nonzero");
  return converged_series(
      config, t_end, samples, m0, ctl, [](const Vec3& b, const Eigen::Vector3d& m) { return bloch(b, m); },
      [](const Eigen::Vector3d& m) { return Vec3{m[0], m[1], m[2]}; },
      [n0](const Eigen::Vector3d& m) { return std::abs(m.norm() - n0) / n0; });
}

CoherenceSeries analytic_coherences(const DriveConfiguration& raw, double t_end, int samples) {
  if (!(t_end > 0.0)) throw std::invalid_argument("analytic_coherences: t_end must be > 0");
  if (samples < 2) throw std::invalid_argument("analytic_coherences: samples must be >= 2");
  const DriveConfiguration config = validate(raw);
  const EffectiveField h = rectified_field(config);
  const double omega = config.dressing.omega;
  const double xi = config.xi();

  CoherenceSeries out;
  out.source = SeriesSource::analytic;
  out.spin = config.spin;
  out.times.resize(samples);
  out.sx.resize(samples);
  out.sy.resize(samples);
  out.sz.resize(samples);
  const auto axis = h.axis();
  out.degenerate = !axis;
  const Vec3 n = axis.value_or(Vec3{1.0, 0.0, 0.0});
  for (int i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    out.times[i] = t;
    if (!axis) {
      out.sx[i] = 1.0;
      out.sy[i] = 0.0;
      out.sz[i] = 0.0;
      continue;
    }
    const double wt = h.omega_L * t;
    const double c = std::cos(wt);
    const double s = std::sin(wt);
    const double ph = xi * std::sin(omega * t);
    const double cp = std::cos(ph);
    const double sp = std::sin(ph);
    out.sx[i] = (1.0 - n[0] * n[0]) * c + n[0] * n[0];
    out.sy[i] = (n[1] * sp + n[2] * cp) * s + (n[0] * n[1] * cp - n[0] * n[2] * sp) * (1.0 - c);
    out.sz[i] = (n[2] * sp - n[1] * cp) * s + (n[0] * n[2] * cp + n[0] * n[1] * sp) * (1.0 - c);
  }
  return out;
}

}  // namespace dressed
