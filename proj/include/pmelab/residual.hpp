#pragma once

#include <cmath>
#include <functional>

#include "pmelab/common.hpp"

namespace pmelab {

/// Centred finite-difference approximation of u_t - Lap_radial(u^m) at
/// (x, t), with the radial Laplacian d_rr + ((n-1)/r) d_r and symmetric
/// reflection across r = 0. Sign convention: >= 0 indicates supersolution
/// behaviour at the point.
///
/// Unreliable within a few h of a free boundary, where u^m is only C^1.
inline double pme_residual_pointwise(
    const std::function<double(double, double)>& u, const PmeParams& pme,
    double x, double t, double h) {
  auto um = [&](double r) {
    return std::pow(u(std::abs(r), t), pme.m);  // symmetric reflection at 0
  };
  const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
  const double wc = um(x), wl = um(x - h), wr = um(x + h);
  const double wxx = (wr - 2.0 * wc + wl) / (h * h);
  double lap;
  if (x < 0.5 * h) {
    // at the origin the radial Laplacian degenerates to n * w''
    lap = pme.n * wxx;
  } else {
    const double wx = (wr - wl) / (2.0 * h);
    lap = wxx + (pme.n - 1) / x * wx;
  }
  return ut - lap;
}

}  // namespace pmelab
