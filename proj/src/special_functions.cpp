#include "dressed/special_functions.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "dressed/roots.hpp"

namespace dressed {

void SeriesControl::check() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("SeriesControl: abs_tol must be > 0");
  if (max_terms < 8) throw std::invalid_argument("SeriesControl: max_terms must be >= 8");
}

std::vector<double> bessel_j_table(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("bessel_j_table: nmax must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }

  // Miller: start well above both the requested order and the turning point
  // n ~ x, recur downward from (0, tiny), normalize with J0 + 2 sum J_2k = 1.
  const double top = std::max(static_cast<double>(nmax), ax);
  int start = static_cast<int>(top + 25.0 + std::sqrt(40.0 * top));
  start += start % 2;

  constexpr double big = 1e250;
  double next = 0.0;    // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / ax * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 <= nmax) out[k - 1] = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > big) {
      cur /= big;
      next /= big;
      norm /= big;
      for (int m = k - 1; m <= nmax; ++m) out[m] /= big;
    }
  }
  norm += cur;  // J_0
  for (auto& v : out) v /= norm;

  if (x < 0.0)
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
  return out;
}

double bessel_j(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  return bessel_j_table(n, x).back();
}

AuxiliarySeries::AuxiliarySeries(double xi, int max_harmonic, SeriesControl ctl)
    : xi_(xi), max_harmonic_(max_harmonic), ctl_(ctl) {
  ctl_.check();
  if (max_harmonic_ < 0) throw std::invalid_argument("AuxiliarySeries: max_harmonic must be >= 0");
  table_ = bessel_j_table(2 * ctl_.max_terms + 2 + max_harmonic_, xi);
}

double AuxiliarySeries::j(int n) const {
  const int a = std::abs(n);
  if (a >= static_cast<int>(table_.size())) return 0.0;
  const double v = table_[a];
  return (n < 0 && (a % 2 == 1)) ? -v : v;
}

namespace {

[[noreturn]] void not_converged(const char* what, double xi, int terms) {
  throw Error(ErrorCode::SeriesNotConverged,
              fmt::format("{} at xi={} did not reach tolerance within {} terms", what, xi, terms));
}

}  // namespace

double AuxiliarySeries::f1(double tau) const {
  double sum = 0.0;
  for (int n = 1; n <= ctl_.max_terms; ++n) {
    const double c = j(2 * n) / n;
    sum += c * std::sin(2.0 * n * tau);
    if (std::abs(c) < ctl_.abs_tol && 2 * n > std::abs(xi_)) return sum;
  }
  not_converged("f1", xi_, ctl_.max_terms);
}

double AuxiliarySeries::f2(double tau) const {
  double sum = 0.0;
  for (int n = 0; n < ctl_.max_terms; ++n) {
    const double c = 4.0 * j(2 * n + 1) / (2 * n + 1);
    const double s = std::sin((n + 0.5) * tau);
    sum += c * s * s;
    if (std::abs(c) < ctl_.abs_tol && 2 * n + 1 > std::abs(xi_)) return sum;
  }
  not_converged("f2", xi_, ctl_.max_terms);
}

std::complex<double> AuxiliarySeries::g(double tau, int p, double phase) const {
  if (p < 1 || p > max_harmonic_)
    throw std::invalid_argument(fmt::format("AuxiliarySeries::g: harmonic {} outside [1, {}]", p, max_harmonic_));
  using namespace std::complex_literals;
  const std::complex<double> up = std::exp(1i * phase);
  const std::complex<double> down = std::exp(-1i * phase);

  // (e^{i k tau} - 1) / (i k)
  auto kernel = [tau](int k) { return (std::exp(1i * (k * tau)) - 1.0) / (1i * static_cast<double>(k)); };

  std::complex<double> plus = 0.0;
  std::complex<double> minus = 0.0;
  auto add = [&](int n) {
    const double jn = j(n);
    if (n != -p) plus += jn * kernel(n + p);
    if (n != p) minus += jn * kernel(n - p);
    return std::abs(jn);
  };
  add(0);
  for (int n = 1; n <= ctl_.max_terms + p; ++n) {
    const double mag = std::max(add(n), add(-n));
    if (mag < ctl_.abs_tol && n > std::abs(xi_) + p) return up * plus + down * minus;
  }
  not_converged("g", xi_, ctl_.max_terms + p);
}

double f_aux(int i, double tau, double xi, int harmonic, double phase, const SeriesControl& ctl) {
  switch (i) {
    case 1: return AuxiliarySeries(xi, 0, ctl).f1(tau);
    case 2: return AuxiliarySeries(xi, 0, ctl).f2(tau);
    case 3: return AuxiliarySeries(xi, harmonic, ctl).f3(tau, harmonic, phase);
    case 4: return AuxiliarySeries(xi, harmonic, ctl).f4(tau, harmonic, phase);
    default: throw std::invalid_argument("f_aux: index must be 1..4");
  }
}

std::complex<double> g_func(double tau, double xi, int harmonic, double phase, const SeriesControl& ctl) {
  return AuxiliarySeries(xi, harmonic, ctl).g(tau, harmonic, phase);
}

double first_j0_root() {
  return bisect([](double x) { return bessel_j(0, x); }, 2.0, 3.0);
}

double inverse_j0(double value) {
  if (!(value > 0.0 && value <= 1.0)) throw std::invalid_argument("inverse_j0: value must be in (0, 1]");
  if (value == 1.0) return 0.0;
  return bisect([value](double x) { return bessel_j(0, x) - value; }, 0.0, first_j0_root());
}

}  // namespace dressed
