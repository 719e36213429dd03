#pragma once

#include <cmath>
#include <stdexcept>

namespace dressed {

/// Root of a continuous f on [a, b] with f(a) f(b) <= 0, by bisection down
/// to |b - a| <= tol.
template <class F>
double bisect(F&& f, double a, double b, double tol = 1e-14) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw std::invalid_argument("bisect: root not bracketed");
  for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace dressed
