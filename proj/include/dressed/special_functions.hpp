#pragma once

// Bessel functions of the first kind and the periodic functions that appear
// in the time integrals of the dressed interaction picture:
//
//   int_0^tau cos(phi)                    = J0(xi) tau + f1(tau)
//   int_0^tau sin(phi)                    = f2(tau)
//   int_0^tau cos(phi) cos(p t + Phi) dt  = [(1+(-1)^p)/2] tau Jp(xi) cos(Phi) + f3(tau)
//   int_0^tau sin(phi) cos(p t + Phi) dt  = [(-1+(-1)^p)/2] tau Jp(xi) sin(Phi) + f4(tau)
//
// with phi(tau) = xi sin(tau). f3 and f4 are half the real and imaginary
// parts of the double Bessel sum g(tau).

#include <cmath>
#include <complex>
#include <vector>

#include "dressed/errors.hpp"

namespace dressed {

struct SeriesControl {
  double abs_tol = 1e-12;
  int max_terms = 64;

  /// Throws std::invalid_argument unless abs_tol > 0 and max_terms >= 8.
  void check() const;
};

/// J_n(x) for n >= 0 and any real x. Absolute error below 1e-12 for
/// |x| <= 50, n <= 20 (downward recurrence with sum normalization).
double bessel_j(int n, double x);

/// J_0(x) ... J_nmax(x) from one recurrence pass.
std::vector<double> bessel_j_table(int nmax, double x);

/// Dressing phase xi sin(tau).
inline double phi(double tau, double xi) { return xi * std::sin(tau); }

/// Bessel coefficients J_n(xi) for one dressing parameter, reused across
/// many tau evaluations of the auxiliary functions.
class AuxiliarySeries {
 public:
  /// `max_harmonic` bounds the tuning harmonic accepted by g().
  explicit AuxiliarySeries(double xi, int max_harmonic = 8, SeriesControl ctl = {});

  double xi() const noexcept { return xi_; }

  /// J_n(xi) for any integer n (J_{-n} = (-1)^n J_n).
  double j(int n) const;

  double f1(double tau) const;
  double f2(double tau) const;
  std::complex<double> g(double tau, int harmonic, double phase) const;
  double f3(double tau, int harmonic, double phase) const { return 0.5 * g(tau, harmonic, phase).real(); }
  double f4(double tau, int harmonic, double phase) const { return 0.5 * g(tau, harmonic, phase).imag(); }

 private:
  double xi_;
  int max_harmonic_;
  SeriesControl ctl_;
  std::vector<double> table_;  // J_0 .. J_N at |xi|, sign applied in j()
};

/// f_i(tau) for i in 1..4. `harmonic` and `phase` are ignored for i = 1, 2.
/// Throws Error(SeriesNotConverged) when max_terms is exhausted.
double f_aux(int i, double tau, double xi, int harmonic, double phase, const SeriesControl& ctl = {});

std::complex<double> g_func(double tau, double xi, int harmonic, double phase, const SeriesControl& ctl = {});

/// First positive zero of J_0, found by bracketing on [2, 3].
double first_j0_root();

/// Inverse of J_0 on [0, first root): the xi with J_0(xi) = value, value in (0, 1].
double inverse_j0(double value);

}  // namespace dressed
