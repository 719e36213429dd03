// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance              run all criteria
//   acceptance --criterion N

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <fmt/format.h>

#include "dressed/calibration.hpp"
#include "dressed/effective_field.hpp"
#include "dressed/frequency.hpp"
#include "dressed/propagator.hpp"
#include "dressed/rng.hpp"
#include "dressed/roots.hpp"
#include "dressed/scan.hpp"
#include "dressed/special_functions.hpp"
#include "dressed/units.hpp"
#include "oracles.hpp"

using namespace dressed;
using std::numbers::pi;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

DriveConfiguration y_tuned_khz(double omega0z, double omega, double xi, double amp, int p, double phase) {
  return make_y_tuned(units::khz_to_rad(omega0z), units::khz_to_rad(omega), xi, units::khz_to_rad(amp), p, phase);
}

// J0 collapse of the undressed-z precession.
Report criterion1() {
  Report r;
  const auto t0 = Clock::now();
  const double root = first_j0_root();
  const double oracle_root = bisect([](double x) { return oracle::bessel_series(0, x); }, 2.0, 3.0);
  r.note(fmt::format("first J0 root {:.9f} (oracle {:.9f})", root, oracle_root));
  r.check(std::abs(root - 2.404826) <= 1e-4, "root within 1e-4 of 2.404826");
  r.check(std::abs(root - oracle_root) <= 1e-12, "root agrees with oracle");

  const double w0z = units::khz_to_rad(2.0);
  const double below = w0z * bessel_j(0, root - 1e-3);
  const double above = w0z * bessel_j(0, root + 1e-3);
  r.check(below > 0.0 && above < 0.0, "omega0z J0 changes sign across the root");
  r.check(bare_precession(0.0, w0z, root) <= 1e-12 * w0z, "bare precession vanishes at the root");

  DriveConfiguration c;
  c.dressing.omega = units::khz_to_rad(10.0);
  c.dressing.omega_d = root * c.dressing.omega;
  c.static_field.omega0z = 0.01 * c.dressing.omega;
  const QuasiEnergy q = monodromy_quasienergy(c);
  const double ratio = q.omega_L_numeric / c.dressing.omega;
  r.note(fmt::format("monodromy Omega_L / omega = {:.3e}", ratio));
  r.check(ratio <= 2e-4, "monodromy Omega_L <= 2e-4 omega");
  const double t = seconds_since(t0);
  r.note(fmt::format("runtime {:.2f} s", t));
  r.check(t < 5.0, "runtime < 5 s");
  return r;
}

// First-order accuracy against the monodromy and its scaling with field strength.
Report criterion2() {
  Report r;
  const auto t0 = Clock::now();
  const double omega = units::khz_to_rad(10.0);
  double worst_abs = 0.0;
  double min_ratio = 1e300, max_ratio = 0.0;
  for (const double xi : {1.0, 1.8, 3.0})
    for (const int p : {1, 2, 3})
      for (const double phase : {0.0, pi / 2}) {
        auto discrepancy = [&](double s) {
          const auto c = make_y_tuned(0.08 * s * omega, omega, xi, 0.08 * s * omega, p, phase);
          return std::abs(larmor_frequency(c) - monodromy_quasienergy(c).omega_L_numeric);
        };
        const double d1 = discrepancy(0.25);
        const double d2 = discrepancy(0.125);
        worst_abs = std::max(worst_abs, d1 / omega);
        const double ratio = d1 / d2;
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        r.check(d1 <= 1e-3 * omega, fmt::format("|pert - monodromy| <= 1e-3 omega at xi={} p={} phi={:.4f}", xi, p, phase));
        r.check(ratio >= 2.5 && ratio <= 6.0,
                fmt::format("ratio {:.3f} in [2.5, 6] at xi={} p={} phi={:.4f}", ratio, xi, p, phase));
      }
  r.note(fmt::format("max |pert - monodromy| / omega at s=1/4: {:.3e}", worst_abs));
  r.note(fmt::format("discrepancy ratio s=1/4 vs s=1/8 in [{:.3f}, {:.3f}]", min_ratio, max_ratio));
  const double t = seconds_since(t0);
  r.note(fmt::format("runtime {:.2f} s", t));
  r.check(t < 60.0, "runtime < 60 s");
  return r;
}

// Closed-form xi dependence of the perturbative theory curves.
Report criterion3() {
  Report r;
  struct Set {
    const char* name;
    int p;
    double phase, omega, amp;
  };
  const Set sets[] = {{"a", 1, pi / 2, 9.0, 4.97}, {"b", 2, 0.0, 10.0, 2.23}, {"c", 3, pi / 2, 9.0, 4.25}};
  const double w0z = units::khz_to_rad(2.040);
  for (const auto& s : sets) {
    const double amp = units::khz_to_rad(s.amp);
    auto closed_form = [&](double xi) {
      const double j0 = std::cyl_bessel_j(0.0, xi);
      const double jp = std::cyl_bessel_j(double(s.p), xi);
      if (s.p % 2 == 1) return std::abs(w0z * j0 + amp * jp * std::sin(s.phase));
      return std::sqrt(std::pow(amp * jp * std::cos(s.phase), 2) + std::pow(w0z * j0, 2));
    };
    ScanSpec spec;
    spec.swept = SweepParameter::xi;
    spec.grid = linear_grid(0.6, 5.0, 441);
    spec.base = y_tuned_khz(2.040, s.omega, 1.0, s.amp, s.p, s.phase);
    const ScanResult res = run_scan(spec);
    double worst = 0.0;
    for (const auto& row : res.rows) {
      const double ref = closed_form(row.value);
      worst = std::max(worst, std::abs(*row.perturbative - ref) / ref);
    }
    r.note(fmt::format("set {}: max relative deviation from closed form {:.2e}", s.name, worst));
    r.check(worst <= 1e-12, fmt::format("set {} matches closed form to 1e-12", s.name));
  }

  // sign change of omega0z J0 + Omega_t J1 for set (a)
  const double amp = units::khz_to_rad(4.97);
  auto signed_field = [&](double xi) { return w0z * bessel_j(0, xi) + amp * bessel_j(1, xi); };
  auto crossings = [&](int points) {
    ScanSpec spec;
    spec.swept = SweepParameter::xi;
    spec.grid = linear_grid(0.6, 5.0, points);
    spec.base = y_tuned_khz(2.040, 9.0, 1.0, 4.97, 1, pi / 2);
    const ScanResult res = run_scan(spec);
    std::vector<double> roots;
    for (std::size_t i = 1; i < res.rows.size(); ++i) {
      const double a = res.rows[i - 1].field.hz;
      const double b = res.rows[i].field.hz;
      if ((a > 0) != (b > 0)) {
        const double xa = res.rows[i - 1].value, xb = res.rows[i].value;
        roots.push_back(xa - a * (xb - xa) / (b - a));
      }
    }
    return roots;
  };
  const auto coarse = crossings(45);
  const auto fine = crossings(881);
  r.check(coarse.size() == 1 && fine.size() == 1, "exactly one sign change in (0.6, 5)");
  if (coarse.size() == 1 && fine.size() == 1) {
    // bracket from the scan, refined by bisection on the library closed form and on the oracle
    const double root = bisect(signed_field, 0.6, 5.0);
    const double oracle_root = bisect(
        [&](double xi) { return w0z * oracle::bessel_series(0, xi) + amp * oracle::bessel_series(1, xi); }, 0.6, 5.0);
    r.note(fmt::format("sign change at xi = {:.6f} (oracle {:.6f}); interpolated on 45 / 881 points: {:.6f} / {:.6f}",
                       root, oracle_root, coarse[0], fine[0]));
    r.check(std::abs(root - oracle_root) <= 1e-10, "root agrees with oracle");
    r.check(std::abs(coarse[0] - fine[0]) <= 1e-3, "root stable to grid refinement within 1e-3");
    r.check(std::abs(fine[0] - root) <= 1e-3, "interpolated root within 1e-3 of bisection");
  }
  return r;
}

// Phase laws.
Report criterion4() {
  Report r;
  const double w0z = units::khz_to_rad(2.040);
  auto phase_scan = [&](double xi, double omega, double amp, int p, const std::vector<double>& grid) {
    ScanSpec spec;
    spec.swept = SweepParameter::phi;
    spec.grid = grid;
    spec.base = y_tuned_khz(2.040, omega, xi, amp, p, 0.0);
    return run_scan(spec);
  };
  const auto grid = linear_grid(0.0, 2.0 * pi, 73);

  struct Odd {
    const char* name;
    double xi, omega, amp;
    int p;
  };
  for (const Odd& s : {Odd{"3a", 1.38, 20.0, 1.49, 1}, Odd{"3c", 1.54, 9.0, 1.23, 3}}) {
    const ScanResult res = phase_scan(s.xi, s.omega, s.amp, s.p, grid);
    Eigen::MatrixXd a(res.rows.size(), 2);
    Eigen::VectorXd y(res.rows.size());
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::sin(res.rows[i].value);
      y[i] = *res.rows[i].perturbative;
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    const double resid = (a * coef - y).cwiseAbs().maxCoeff() / y.cwiseAbs().maxCoeff();
    r.note(fmt::format("{}: A + B sin(phi) fit, A = {:.6f} kHz, B = {:.6f} kHz, max relative residual {:.2e}", s.name,
                       units::rad_to_khz(coef[0]), units::rad_to_khz(coef[1]), resid));
    r.check(resid < 1e-12, fmt::format("{} sine law residual < 1e-12", s.name));
    const double a_ref = w0z * oracle::bessel_series(0, s.xi);
    const double b_ref = units::khz_to_rad(s.amp) * oracle::bessel_series(s.p, s.xi);
    r.check(std::abs(coef[0] - a_ref) <= 1e-12 * a_ref && std::abs(coef[1] - b_ref) <= 1e-11 * std::abs(b_ref),
            fmt::format("{} fitted A, B equal omega0z J0, Omega_t Jp", s.name));
  }

  // even harmonic: pi periodicity and the squared-cosine law
  struct Even {
    const char* name;
    double xi, omega, amp;
    int p;
  };
  for (const Even& s : {Even{"3b", 3.83, 10.0, 2.23, 2}, Even{"p=4", 3.83, 10.0, 2.23, 4}}) {
    const auto half = linear_grid(0.0, pi, 37);
    std::vector<double> shifted;
    for (const double phi : half) shifted.push_back(phi + pi);
    const ScanResult base = phase_scan(s.xi, s.omega, s.amp, s.p, half);
    const ScanResult plus = phase_scan(s.xi, s.omega, s.amp, s.p, shifted);
    double worst_shift = 0.0, worst_mirror = 0.0;
    for (std::size_t i = 0; i < half.size(); ++i) {
      const double v = *base.rows[i].perturbative;
      worst_shift = std::max(worst_shift, std::abs(v - *plus.rows[i].perturbative) / v);
      worst_mirror = std::max(worst_mirror, std::abs(v - *base.rows[half.size() - 1 - i].perturbative) / v);
    }
    r.note(fmt::format("{}: max |Omega(phi) - Omega(phi + pi)| / Omega = {:.1e}, mirror {:.1e}", s.name, worst_shift,
                       worst_mirror));
    // phi + pi is itself rounded, so equality holds to the last few bits
    r.check(worst_shift <= 4.0 * std::numeric_limits<double>::epsilon(), fmt::format("{} pi periodicity", s.name));
    r.check(worst_mirror <= 4.0 * std::numeric_limits<double>::epsilon(), fmt::format("{} mirror symmetry", s.name));

    const ScanResult full = phase_scan(s.xi, s.omega, s.amp, s.p, grid);
    Eigen::MatrixXd a(full.rows.size(), 2);
    Eigen::VectorXd y(full.rows.size());
    for (std::size_t i = 0; i < full.rows.size(); ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::pow(std::cos(full.rows[i].value), 2);
      y[i] = std::pow(*full.rows[i].perturbative, 2);
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    const double resid = (a * coef - y).cwiseAbs().maxCoeff() / y.cwiseAbs().maxCoeff();
    r.note(fmt::format("{}: Omega^2 = A + B cos^2(phi) fit, max relative residual {:.2e}", s.name, resid));
    r.check(resid < 1e-12, fmt::format("{} squared-cosine law residual < 1e-12", s.name));
  }
  return r;
}

// Triaxial anisotropy: the x axis is not dressed.
Report criterion5() {
  Report r;
  ScanSpec spec;
  spec.swept = SweepParameter::omega0x;
  spec.grid = linear_grid(0.0, units::khz_to_rad(15.0), 31);
  spec.base = y_tuned_khz(5.979, 30.0, 1.833, 0.354, 1, pi / 2);
  const ScanResult res = run_scan(spec);
  const double c0 = std::pow(*res.rows[0].perturbative, 2);
  double worst = 0.0;
  for (const auto& row : res.rows)
    worst = std::max(worst, std::abs(std::pow(*row.perturbative, 2) - row.value * row.value - c0) / c0);
  r.note(fmt::format("max relative spread of Omega_L^2 - omega0x^2: {:.2e}", worst));
  r.check(worst <= 1e-12, "Omega_L^2 - omega0x^2 constant to 1e-12");

  bool hx_exact = true;
  for (const double xi : {0.0, 0.5, 1.0, 1.833, 2.404825557695773, 3.0, 5.0, 8.0})
    for (const double x : {0.0, 3.1, 15.0}) {
      auto c = y_tuned_khz(5.979, 30.0, xi, 0.354, 1, pi / 2);
      c.static_field.omega0x = units::khz_to_rad(x);
      hx_exact = hx_exact && rectified_field(c).hx == c.static_field.omega0x;
    }
  r.check(hx_exact, "hx = omega0x for all tested xi");

  // same geometry scaled so the strongest static or tuning component is 0.02 omega
  const double omega = units::khz_to_rad(30.0);
  const double k = 0.02 * omega / units::khz_to_rad(15.0);
  ScanSpec small;
  small.swept = SweepParameter::omega0x;
  small.grid = linear_grid(0.0, k * units::khz_to_rad(15.0), 16);
  small.base = make_y_tuned(k * units::khz_to_rad(5.979), omega, 1.833, k * units::khz_to_rad(0.354), 1, pi / 2);
  small.methods = {Method::perturbative, Method::monodromy};
  const ScanResult sres = run_scan(small);
  double worst_mono = 0.0;
  bool all = true;
  for (const auto& row : sres.rows) {
    if (!row.monodromy) {
      all = false;
      continue;
    }
    worst_mono = std::max(worst_mono, std::abs(*row.perturbative - *row.monodromy) / omega);
  }
  r.note(fmt::format("scaled scan: max |pert - monodromy| / omega = {:.2e}", worst_mono));
  r.check(all, "monodromy evaluated at every point");
  r.check(worst_mono <= 1e-3, "monodromy within 1e-3 omega");
  return r;
}

// Coherence closed forms against direct propagation.
Report criterion6() {
  Report r;
  const double omega = units::khz_to_rad(10.0);
  auto rms = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / a.size());
  };
  struct Geometry {
    const char* name;
    double omega0x, omega0y, phase;
  };
  // eta = 0.05: the measured geometry, and one with all three static components
  const Geometry geometries[] = {{"z + y tuning", 0.0, 0.0, pi / 2}, {"xyz + y tuning", 0.03, 0.02, pi / 3}};
  for (const Geometry& g : geometries)
    for (const double xi : {0.5, 1.8, 3.5}) {
      DriveConfiguration c = make_y_tuned(0.05 * omega, omega, xi, 0.05 * omega, 1, g.phase);
      c.static_field.omega0x = g.omega0x * omega;
      c.static_field.omega0y = g.omega0y * omega;
      const EffectiveField h = rectified_field(c);
      const double p1 = floquet_first_order(c, uniform_period_grid(257)).p1_norm_max;
      const double t_end = 10.0 * units::two_pi / h.omega_L;
      const int samples = 4001;
      const CoherenceSeries an = analytic_coherences(c, t_end, samples);
      const CoherenceSeries num = propagate_spin_half(c, t_end, samples);
      const double ex = rms(an.sx, num.sx), ey = rms(an.sy, num.sy), ez = rms(an.sz, num.sz);
      const std::string tag = fmt::format("{}, xi={}", g.name, xi);
      r.note(fmt::format("{}: eta {:.3f}, p1_norm_max {:.3f}, RMS sx {:.4f}, sy {:.4f}, sz {:.4f}", tag, h.eta, p1, ex,
                         ey, ez));
      r.check(h.eta <= 0.05 + 1e-15, tag + " eta <= 0.05");
      r.check(ex <= 0.02, tag + " RMS sx <= 0.02");
      r.check(ey <= 0.02, tag + " RMS sy <= 0.02");
      r.check(ez <= 0.02, tag + " RMS sz <= 0.02");

      // spin 1: same Bloch motion, conserved norm, same frequency
      DriveConfiguration c1 = c;
      c1.spin = Spin::one;
      const CoherenceSeries m = propagate_bloch_spin1(c1, t_end, samples);
      r.check(m.max_norm_drift <= 1e-9, fmt::format("{} spin-1 norm drift {:.1e} <= 1e-9", tag, m.max_norm_drift));
      const FrequencyEstimate f_half = extract_frequency(num);
      const FrequencyEstimate f_one = extract_frequency(m);
      const double tol = 3.0 * std::hypot(f_half.std_error, f_one.std_error) + 1e-9 * f_half.omega;
      r.note(fmt::format("{}: spin-1 norm drift {:.1e}; extracted Omega_L spin 1/2 {:.6f} kHz, spin 1 {:.6f} kHz",
                         tag, m.max_norm_drift, units::rad_to_khz(f_half.omega), units::rad_to_khz(f_one.omega)));
      r.check(std::abs(f_half.omega - f_one.omega) <= tol, tag + " spin-1 and spin-1/2 frequencies agree");
    }
  return r;
}

// Integral identities behind the auxiliary functions.
Report criterion7() {
  Report r;
  SeededRng rng(20241014);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double xi = 0.1 + 4.9 * rng.uniform();
    const int p = 1 + static_cast<int>(4 * rng.uniform());
    const double phase = 2.0 * pi * rng.uniform();
    const double tau = 4.0 * pi * rng.uniform();
    const AuxiliarySeries aux(xi, p);
    const double j0 = oracle::bessel_series(0, xi);
    const double jp = oracle::bessel_series(p, xi);
    const int panels = 16 + static_cast<int>(8 * tau);

    const double i1 = oracle::integrate([&](double t) { return std::cos(xi * std::sin(t)); }, 0.0, tau, panels);
    const double i2 = oracle::integrate([&](double t) { return std::sin(xi * std::sin(t)); }, 0.0, tau, panels);
    const double i3 = oracle::integrate(
        [&](double t) { return std::cos(xi * std::sin(t)) * std::cos(p * t + phase); }, 0.0, tau, panels);
    const double i4 = oracle::integrate(
        [&](double t) { return std::sin(xi * std::sin(t)) * std::cos(p * t + phase); }, 0.0, tau, panels);
    const double even = p % 2 == 0 ? 1.0 : 0.0;
    const double e1 = std::abs(i1 - (j0 * tau + aux.f1(tau)));
    const double e2 = std::abs(i2 - aux.f2(tau));
    const double e3 = std::abs(i3 - (even * tau * jp * std::cos(phase) + aux.f3(tau, p, phase)));
    const double e4 = std::abs(i4 - (-(1.0 - even) * tau * jp * std::sin(phase) + aux.f4(tau, p, phase)));
    worst = std::max({worst, e1, e2, e3, e4});
  }
  r.note(fmt::format("max |quadrature - closed form| over 50 tuples: {:.2e}", worst));
  r.check(worst <= 1e-8, "integral identities to 1e-8");

  double worst_period = 0.0, worst_g = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double xi = 0.1 + 4.9 * rng.uniform();
    const int p = 1 + static_cast<int>(4 * rng.uniform());
    const double phase = 2.0 * pi * rng.uniform();
    const double tau = 2.0 * pi * rng.uniform();
    const AuxiliarySeries aux(xi, p);
    worst_period = std::max({worst_period, std::abs(aux.f1(tau + 2 * pi) - aux.f1(tau)),
                             std::abs(aux.f2(tau + 2 * pi) - aux.f2(tau)),
                             std::abs(aux.f3(tau + 2 * pi, p, phase) - aux.f3(tau, p, phase)),
                             std::abs(aux.f4(tau + 2 * pi, p, phase) - aux.f4(tau, p, phase))});
    worst_g = std::max(worst_g, std::abs(aux.g(2 * pi, p, phase)));
  }
  r.note(fmt::format("max periodicity defect {:.1e}, max |g(2 pi)| {:.1e}", worst_period, worst_g));
  r.check(worst_period <= 1e-12, "f_i are 2 pi periodic");
  r.check(worst_g <= 1e-12, "g(2 pi) = 0");
  return r;
}

// Calibration round trip.
Report criterion8() {
  Report r;
  const auto t0 = Clock::now();
  const CalibrationFixed fixed{units::khz_to_rad(5.979), units::khz_to_rad(30.0)};
  const auto grid = default_calibration_grid();
  const auto clean = synthetic_calibration_data(grid, fixed, 1.0, 0.03, 1.833);
  const CalibrationFit f = calibrate(clean, fixed);
  r.note(fmt::format("noiseless: scale {:.10f}, tilt {:.10f}, xi {:.10f}", f.scale, f.tilt, f.xi));
  r.check(std::abs(f.scale - 1.0) <= 1e-6, "scale recovered to 1e-6");
  r.check(std::abs(f.tilt - 0.03) <= 1e-6 * 0.03, "tilt recovered to 1e-6 relative");
  r.check(std::abs(f.xi - 1.833) <= 1e-6 * 1.833, "xi recovered to 1e-6 relative");

  int within = 0, failed = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto noisy = synthetic_calibration_data(grid, fixed, 1.0, 0.03, 1.833, 0.002, seed);
    try {
      const CalibrationFit g = calibrate(noisy, fixed);
      if (std::abs(g.scale - 1.0) <= 0.04) ++within;
    } catch (const Error&) {
      ++failed;
    }
  }
  r.note(fmt::format("0.2% noise: scale within 4% in {} of 100 trials ({} fits rejected)", within, failed));
  r.check(within >= 95, "scale within 4% in >= 95 of 100 trials");
  const double t = seconds_since(t0);
  r.note(fmt::format("runtime {:.2f} s", t));
  r.check(t < 30.0, "runtime < 30 s");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  app.add_flag("-v,--verbose", verbose, "print measured values for passing criteria too");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Report()>>> criteria = {
      {"J0 collapse", criterion1},
      {"first-order accuracy and scaling", criterion2},
      {"xi theory curves", criterion3},
      {"phase laws", criterion4},
      {"anisotropy", criterion5},
      {"coherence formulas", criterion6},
      {"integral identities", criterion7},
      {"calibration round trip", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Report rep;
    try {
      rep = criteria[i].second();
    } catch (const std::exception& e) {
      rep.ok = false;
      rep.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("{} criterion {}: {}\n", rep.ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    if (!rep.ok || verbose || only != 0)
      for (const auto& n : rep.notes) std::cout << "    " << n << '\n';
    if (!rep.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
