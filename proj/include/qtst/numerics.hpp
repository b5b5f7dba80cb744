#pragma once

// Small numerical kernels shared by the physics modules.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "qtst/error.hpp"

namespace qtst::numerics {

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs.  Runs until
/// the bracket is narrower than `width` or cannot be split further.
template <class F>
std::pair<double, double> bisect(F&& f, double lo, double hi, double width) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, lo};
  if (fhi == 0.0) return {hi, hi};
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw convergence_error("bisection: no sign change on [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  }
  for (int it = 0; it < 2000 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err);
}

/// Integral over [0, inf) split at the given interior points.  Splitting at the
/// characteristic frequencies of a spectrum keeps the adaptive rule from
/// missing narrow features.
template <class F>
double integrate_half_line(F&& f, std::vector<double> breaks, double rel_tol = 1e-10) {
  std::erase_if(breaks, [](double x) { return !(x > 0.0) || !std::isfinite(x); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  double lo = 0.0;
  for (double b : breaks) {
    total += integrate(f, lo, b, rel_tol);
    lo = b;
  }
  total += integrate(f, lo, std::numeric_limits<double>::infinity(), rel_tol);
  return total;
}

/// Scaled complementary error function exp(y^2) erfc(y).
///
/// For 0 <= y < 5 the product is formed directly (erfc keeps full relative
/// precision there and exp(y^2) cannot overflow).  For y >= 5 the Laplace
/// continued fraction 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...)))) is summed
/// backwards.  Negative arguments use erfcx(-y) = 2 exp(y^2) - erfcx(y).
inline double erfcx(double y) {
  if (std::isnan(y)) return y;
  if (y < 0.0) return 2.0 * std::exp(y * y) - erfcx(-y);
  if (y < 5.0) return std::exp(y * y) * std::erfc(y);
  if (std::isinf(y)) return 0.0;
  double t = y;
  for (int k = 80; k >= 1; --k) t = y + (0.5 * k) / t;
  return 1.0 / (std::sqrt(std::numbers::pi) * t);
}

/// sum_{n > N} 1/n^2.
inline double tail_inverse_square(long N) {
  return boost::math::trigamma(static_cast<double>(N) + 1.0);
}

/// sum_{n > N} 1/n^3.
inline double tail_inverse_cube(long N) {
  return -0.5 * boost::math::polygamma(2, static_cast<double>(N) + 1.0);
}

/// sinh(a)/sinh(b) for a, b > 0 without overflow.
inline double sinh_ratio(double a, double b) {
  return std::exp(a - b) * (std::expm1(-2.0 * a) / std::expm1(-2.0 * b));
}

}  // namespace qtst::numerics
