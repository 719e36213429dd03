#include "dressed/effective_field.hpp"

#include <algorithm>
#include <cmath>

#include "dressed/units.hpp"

namespace dressed {

std::optional<Vec3> EffectiveField::axis() const {
  if (omega_L == 0.0) return std::nullopt;
  return Vec3{hx / omega_L, hy / omega_L, hz / omega_L};
}

namespace {

int max_harmonic(const DriveConfiguration& config) {
  int h = 0;
  for (const auto& t : config.tuning) h = std::max(h, t.harmonic);
  return h;
}

bool even(int n) { return n % 2 == 0; }

}  // namespace

EffectiveField rectified_field(const DriveConfiguration& raw) {
  const DriveConfiguration config = validate(raw);
  const double xi = config.xi();
  const auto bessel = bessel_j_table(std::max(0, max_harmonic(config)), xi);
  const double j0 = bessel[0];

  EffectiveField h;
  h.hx = config.static_field.omega0x;
  h.hy = j0 * config.static_field.omega0y;
  h.hz = j0 * config.static_field.omega0z;
  if (const auto* y = config.tuning_on(Axis::y); y && y->amplitude > 0.0) {
    const double jp = bessel[y->harmonic] * y->amplitude;
    if (even(y->harmonic))
      h.hy += jp * std::cos(y->phase);
    else
      h.hz += jp * std::sin(y->phase);
  }
  if (const auto* z = config.tuning_on(Axis::z); z && z->amplitude > 0.0) {
    const double jr = bessel[z->harmonic] * z->amplitude;
    if (even(z->harmonic))
      h.hz += jr * std::cos(z->phase);
    else
      h.hy -= jr * std::sin(z->phase);
  }
  h.omega_L = std::sqrt(h.hx * h.hx + h.hy * h.hy + h.hz * h.hz);
  h.eta = perturbation_strength(config);
  return h;
}

double larmor_frequency(const DriveConfiguration& config) { return rectified_field(config).omega_L; }

double bare_precession(double omega0x, double omega0z, double xi) {
  const double wz = omega0z * bessel_j(0, xi);
  return std::sqrt(omega0x * omega0x + wz * wz);
}

std::array<Eigen::Matrix3d, 3> rotation_generators() {
  Eigen::Matrix3d lx, ly, lz;
  lx << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  ly << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  lz << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return {lx, ly, lz};
}

std::array<Eigen::Matrix2cd, 3> pauli() {
  using C = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, C(0, -1), C(0, 1), 0;
  sz << 1, 0, 0, -1;
  return {sx, sy, sz};
}

std::vector<Vec3> micromotion(const DriveConfiguration& raw, std::span<const double> tau_grid,
                              const SeriesControl& ctl) {
  const DimensionlessParams d = dimensionless(raw);
  const AuxiliarySeries series(d.xi, std::max(1, max_harmonic(raw)), ctl);
  const double w0y = d.static_ratio[1];
  const double w0z = d.static_ratio[2];
  const auto* x = d.tuning_on(Axis::x);
  const auto* y = d.tuning_on(Axis::y);
  const auto* z = d.tuning_on(Axis::z);

  std::vector<Vec3> out;
  out.reserve(tau_grid.size());
  for (const double tau : tau_grid) {
    const double f1 = series.f1(tau);
    const double f2 = series.f2(tau);
    Vec3 p{0.0, w0y * f1 + w0z * f2, w0z * f1 - w0y * f2};
    if (x) p[0] += x->amplitude * (std::sin(x->harmonic * tau + x->phase) - std::sin(x->phase)) / x->harmonic;
    if (y) {
      const auto gy = 0.5 * series.g(tau, y->harmonic, y->phase);
      p[1] += y->amplitude * gy.real();
      p[2] -= y->amplitude * gy.imag();
    }
    if (z) {
      const auto gz = 0.5 * series.g(tau, z->harmonic, z->phase);
      p[1] += z->amplitude * gz.imag();
      p[2] += z->amplitude * gz.real();
    }
    for (auto& c : p) c *= 0.5;
    out.push_back(p);
  }
  return out;
}

Vec3 micromotion(const DriveConfiguration& config, double tau, const SeriesControl& ctl) {
  return micromotion(config, std::span<const double>(&tau, 1), ctl).front();
}

FloquetFirstOrder floquet_first_order(const DriveConfiguration& raw, std::span<const double> tau_grid,
                                      const SeriesControl& ctl) {
  const DriveConfiguration config = validate(raw);
  const EffectiveField h = rectified_field(config);
  const double w = config.dressing.omega;
  const Vec3 hv = h.vector();

  FloquetFirstOrder out;
  out.spin = config.spin;
  double scale = 1.0;
  if (config.spin == Spin::half) {
    const auto s = pauli();
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) m += (hv[j] / (2.0 * w)) * s[j];
    out.lambda1 = m;
  } else {
    const auto l = rotation_generators();
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 3; ++j) m += (hv[j] / w) * l[j];
    out.lambda1 = m.cast<std::complex<double>>();
    scale = 2.0;
  }

  // ||p.sigma||_2 = |p| and ||v.L||_2 = |v|
  for (const auto& p : micromotion(config, tau_grid, ctl)) {
    const double n = scale * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    out.p1_norm_max = std::max(out.p1_norm_max, n);
  }
  return out;
}

std::vector<double> FloquetFirstOrder::spectrum() const {
  Eigen::MatrixXcd m = lambda1;
  if (spin == Spin::one) m *= std::complex<double>(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> uniform_period_grid(int points) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(points, 2)));
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = units::two_pi * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  return grid;
}

}  // namespace dressed
