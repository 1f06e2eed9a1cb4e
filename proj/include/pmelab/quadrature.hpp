#pragma once

#include <cmath>
#include <functional>

#include "pmelab/common.hpp"

namespace pmelab {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth, double* err_out) {
  const double m = 0.5 * (a + b);
  const double fl = f(0.5 * (a + m));
  const double fr = f(0.5 * (m + b));
  const double left = simpson(f, a, m, fa, fl, fm);
  const double right = simpson(f, m, b, fm, fr, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    *err_out += std::abs(diff) / 15.0;
    return left + right + diff / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1,
                              err_out) +
         adaptive_simpson_rec(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1,
                              err_out);
}

}  // namespace detail

struct QuadratureResult {
  double value;
  double error_estimate;
};

/// Adaptive Simpson quadrature. Throws QuadratureError when the requested
/// tolerance cannot be met within the recursion budget.
inline QuadratureResult integrate_adaptive(
    const std::function<double(double)>& f, double a, double b,
    double tol = 1e-12, int max_depth = 48) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = detail::simpson(f, a, b, fa, fm, fb);
  double err = 0.0;
  const double value = detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole,
                                                    tol, max_depth, &err);
  const double scale = std::max(1.0, std::abs(value));
  if (err > 100.0 * tol * scale)
    throw QuadratureError("adaptive quadrature did not converge", err);
  return {value, err};
}

}  // namespace pmelab
