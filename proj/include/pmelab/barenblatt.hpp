#pragma once

#include <cmath>
#include <stdexcept>

#include "pmelab/common.hpp"
#include "pmelab/quadrature.hpp"

namespace pmelab {

/// Self-similarity exponent n / (n(m-1) + 2), always in (0, n/2).
inline double barenblatt_lambda(const PmeParams& pme) {
  return pme.n / (pme.n * (pme.m - 1.0) + 2.0);
}

/// Source-type self-similar solution with compact support. The profile
/// constant C sets the mass; the solution lives in the shifted variables
/// (x - center, t - t_shift) and vanishes identically for t <= t_shift.
struct BarenblattParams {
  PmeParams pme;
  double C;
  double t_shift;
  double center;

  BarenblattParams(PmeParams pme_, double C_, double t_shift_ = 0.0,
                   double center_ = 0.0)
      : pme(pme_), C(C_), t_shift(t_shift_), center(center_) {
    if (!(C > 0.0)) throw std::invalid_argument("BarenblattParams: C > 0");
  }

  double lambda() const { return barenblatt_lambda(pme); }

  // coefficient of |x|^2 / t^{2 lambda/n} inside the bracket
  double bracket_coeff() const {
    const double lam = lambda();
    return lam * (pme.m - 1.0) / (2.0 * pme.m * pme.n);
  }
};

inline double barenblatt_value(const BarenblattParams& bp, double x,
                               double t) {
  const double ts = t - bp.t_shift;
  if (ts <= 0.0) return 0.0;
  const double lam = bp.lambda();
  const double xs = x - bp.center;
  const double scale = std::pow(ts, 2.0 * lam / bp.pme.n);
  const double bracket = bp.C - bp.bracket_coeff() * xs * xs / scale;
  if (bracket <= 0.0) return 0.0;
  return std::pow(ts, -lam) * std::pow(bracket, 1.0 / (bp.pme.m - 1.0));
}

/// Radius of the support (root of the bracket) at time t > t_shift.
inline double barenblatt_support_radius(const BarenblattParams& bp, double t) {
  const double ts = t - bp.t_shift;
  if (ts <= 0.0)
    throw std::invalid_argument(
        "barenblatt_support_radius: t <= t_shift, solution is identically "
        "zero");
  const double lam = bp.lambda();
  return std::sqrt(bp.C / bp.bracket_coeff()) *
         std::pow(ts, lam / bp.pme.n);
}

/// Radial component of grad(u^m) for the Barenblatt solution (x measured
/// from the center). Zero outside the support and for t <= t_shift.
inline double barenblatt_grad_um(const BarenblattParams& bp, double x,
                                 double t) {
  const double ts = t - bp.t_shift;
  if (ts <= 0.0) return 0.0;
  const double lam = bp.lambda();
  const double m = bp.pme.m;
  const double xs = x - bp.center;
  const double scale = std::pow(ts, 2.0 * lam / bp.pme.n);
  const double a = bp.bracket_coeff();
  const double bracket = bp.C - a * xs * xs / scale;
  if (bracket <= 0.0) return 0.0;
  return std::pow(ts, -lam * m) * (m / (m - 1.0)) *
         std::pow(bracket, 1.0 / (m - 1.0)) * (-2.0 * a * xs / scale);
}

/// Radial component of grad(u). Unbounded at the free boundary when m > 2.
inline double barenblatt_grad_u(const BarenblattParams& bp, double x,
                                double t) {
  const double ts = t - bp.t_shift;
  if (ts <= 0.0) return 0.0;
  const double lam = bp.lambda();
  const double m = bp.pme.m;
  const double xs = x - bp.center;
  const double scale = std::pow(ts, 2.0 * lam / bp.pme.n);
  const double a = bp.bracket_coeff();
  const double bracket = bp.C - a * xs * xs / scale;
  if (bracket <= 0.0) return 0.0;
  return std::pow(ts, -lam) * (1.0 / (m - 1.0)) *
         std::pow(bracket, 1.0 / (m - 1.0) - 1.0) * (-2.0 * a * xs / scale);
}

/// Total mass over R^n via radial quadrature with measure
/// omega_{n-1} r^{n-1} dr. Conserved in t (up to quadrature tolerance).
inline double barenblatt_mass(const BarenblattParams& bp, double t,
                              double tol = 1e-12) {
  if (t - bp.t_shift <= 0.0)
    throw std::invalid_argument("barenblatt_mass: t <= t_shift");
  const double rmax = barenblatt_support_radius(bp, t);
  const double omega = unit_sphere_area(bp.pme.n);
  const int n = bp.pme.n;
  auto f = [&](double r) {
    return omega * std::pow(r, n - 1) *
           barenblatt_value(bp, bp.center + r, t);
  };
  return integrate_adaptive(f, 0.0, rmax, tol).value;
}

}  // namespace pmelab
