#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pmelab {

/// Slow-diffusion exponent and spatial dimension for u_t = div(grad(u^m)).
struct PmeParams {
  double m;
  int n;

  PmeParams() : m(2.0), n(1) {}

  PmeParams(double m_, int n_) : m(m_), n(n_) {
    if (!(m > 1.0))
      throw std::invalid_argument("PmeParams: require m > 1 (slow diffusion)");
    if (n < 1) throw std::invalid_argument("PmeParams: require n >= 1");
  }
};

/// x^p for x >= 0, with fast paths for the exponents that dominate the
/// solver's inner loop.
inline double pow_nonneg(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 0.5) return std::sqrt(x);
  if (p == 1.5) return x * std::sqrt(x);
  return std::pow(x, p);
}

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Volume of the n-ball of radius r.
inline double ball_volume(int n, double r) {
  return unit_sphere_area(n) * std::pow(r, n) / n;
}

struct QuadratureError : std::runtime_error {
  double achieved;
  QuadratureError(const std::string& msg, double achieved_)
      : std::runtime_error(msg), achieved(achieved_) {}
};

}  // namespace pmelab
