#pragma once

#include <cmath>
#include <stdexcept>

#include "pmelab/common.hpp"

namespace pmelab {

/// Smooth compactly supported space-time bump
///   phi(x, t) = A (1 - (r/rho)^2)^p (1 - ((t - t_c)/tau)^2)^p
/// with closed-form time derivative and radial gradient. p >= 3 keeps the
/// derivatives continuous up to the support edge.
struct TestFunction {
  double t_center;
  double rho;   // spatial support radius
  double tau;   // temporal support radius
  double amplitude;
  int power;

  TestFunction(double t_center_, double rho_, double tau_, double amplitude_,
               int power_ = 3)
      : t_center(t_center_),
        rho(rho_),
        tau(tau_),
        amplitude(amplitude_),
        power(power_) {
    if (!(rho > 0.0) || !(tau > 0.0) || power < 2)
      throw std::invalid_argument("TestFunction: bad shape parameters");
  }

  bool in_support(double r, double t) const {
    return std::abs(r) < rho && std::abs(t - t_center) < tau;
  }

  double value(double r, double t) const {
    if (!in_support(r, t)) return 0.0;
    const double sx = 1.0 - (r / rho) * (r / rho);
    const double st = 1.0 - sq((t - t_center) / tau);
    return amplitude * std::pow(sx, power) * std::pow(st, power);
  }

  double dt(double r, double t) const {
    if (!in_support(r, t)) return 0.0;
    const double sx = 1.0 - (r / rho) * (r / rho);
    const double u = (t - t_center) / tau;
    const double st = 1.0 - u * u;
    return amplitude * std::pow(sx, power) * power *
           std::pow(st, power - 1) * (-2.0 * u / tau);
  }

  /// radial component of the spatial gradient
  double dr(double r, double t) const {
    if (!in_support(r, t)) return 0.0;
    const double sx = 1.0 - (r / rho) * (r / rho);
    const double st = 1.0 - sq((t - t_center) / tau);
    return amplitude * power * std::pow(sx, power - 1) *
           (-2.0 * r / (rho * rho)) * std::pow(st, power);
  }

 private:
  static double sq(double v) { return v * v; }
};

namespace detail {

// C^2 quintic ramp: 1 at s <= 0, 0 at s >= 1, with vanishing first and
// second derivatives at both ends.
inline double ramp(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

inline double ramp_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return -(30.0 * s * s - 60.0 * s * s * s + 30.0 * s * s * s * s);
}

}  // namespace detail

/// Cut-off in [0, 1] with a plateau zeta = 1 on |r| <= r_plateau,
/// |t - t_c| <= t_plateau, decaying smoothly to 0 at the support edge.
struct CutoffFunction {
  double t_center;
  double r_plateau, r_outer;
  double t_plateau, t_outer;

  CutoffFunction(double t_center_, double r_plateau_, double r_outer_,
                 double t_plateau_, double t_outer_)
      : t_center(t_center_),
        r_plateau(r_plateau_),
        r_outer(r_outer_),
        t_plateau(t_plateau_),
        t_outer(t_outer_) {
    if (!(0.0 < r_plateau && r_plateau < r_outer) ||
        !(0.0 < t_plateau && t_plateau < t_outer))
      throw std::invalid_argument("CutoffFunction: plateau must sit inside");
  }

  double value(double r, double t) const {
    return spatial(r) * temporal(t);
  }

  double dt(double r, double t) const {
    const double s = (std::abs(t - t_center) - t_plateau) /
                     (t_outer - t_plateau);
    const double sign = (t >= t_center) ? 1.0 : -1.0;
    return spatial(r) * detail::ramp_deriv(s) * sign /
           (t_outer - t_plateau);
  }

  double dr(double r, double t) const {
    const double s = (std::abs(r) - r_plateau) / (r_outer - r_plateau);
    const double sign = (r >= 0.0) ? 1.0 : -1.0;
    return temporal(t) * detail::ramp_deriv(s) * sign /
           (r_outer - r_plateau);
  }

 private:
  double spatial(double r) const {
    return detail::ramp((std::abs(r) - r_plateau) / (r_outer - r_plateau));
  }
  double temporal(double t) const {
    return detail::ramp((std::abs(t - t_center) - t_plateau) /
                        (t_outer - t_plateau));
  }
};

}  // namespace pmelab
