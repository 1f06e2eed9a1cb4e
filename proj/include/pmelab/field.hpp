#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "pmelab/barenblatt.hpp"
#include "pmelab/profile.hpp"
#include "pmelab/solver.hpp"

namespace pmelab {

/// Radially symmetric space-time density u(r, t) with optional gradient
/// data, the common currency of the diagnostics layer. `singular_time`
/// marks the slice below which u vanishes (or before which the field is
/// considered regular); refinement quadratures grade toward it.
struct SpaceTimeField {
  PmeParams pme;
  double domain_radius;
  double t_min, t_max;
  double singular_time;
  std::function<double(double, double)> value;      // u(r, t)
  std::function<double(double, double)> grad_um;    // d_r u^m, may be empty
  std::function<double(double, double)> grad_u;     // d_r u, may be empty

  double eval(double r, double t) const { return value(std::abs(r), t); }

  double grad_um_or_fd(double r, double t, double h) const {
    if (grad_um) return grad_um(r, t);
    auto um = [&](double x) { return std::pow(eval(x, t), pme.m); };
    return (um(r + h) - um(r - h)) / (2.0 * h);
  }

  double grad_u_or_fd(double r, double t, double h) const {
    if (grad_u) return grad_u(r, t);
    return (eval(r + h, t) - eval(r - h, t)) / (2.0 * h);
  }
};

inline SpaceTimeField make_barenblatt_field(const BarenblattParams& bp,
                                            double domain_radius,
                                            double t_max) {
  SpaceTimeField f;
  f.pme = bp.pme;
  f.domain_radius = domain_radius;
  f.t_min = -t_max;
  f.t_max = t_max;
  f.singular_time = bp.t_shift;
  f.value = [bp](double r, double t) { return barenblatt_value(bp, r, t); };
  f.grad_um = [bp](double r, double t) {
    return barenblatt_grad_um(bp, r, t);
  };
  f.grad_u = [bp](double r, double t) { return barenblatt_grad_u(bp, r, t); };
  return f;
}

/// Separable solution U(x)(t - t0)^{-1/(m-1)} on B(0, R) x (t0, t_max),
/// extended by zero for t <= t0.
inline SpaceTimeField make_giant_field(const GiantProfile& profile, double t0,
                                       double t_max) {
  SpaceTimeField f;
  f.pme = profile.pme;
  f.domain_radius = profile.R;
  f.t_min = t0;
  f.t_max = t_max;
  f.singular_time = t0;
  const double m = profile.pme.m;
  f.value = [profile, t0](double r, double t) {
    return giant_value(profile, t0, r, t);
  };
  f.grad_um = [profile, t0, m](double r, double t) {
    if (t <= t0 || std::abs(r) >= profile.R) return 0.0;
    const double h = profile.R * 1e-6;
    const double rr = std::clamp(std::abs(r), h, profile.R - h);
    const double wl = std::pow(profile.value(rr - h), m);
    const double wr = std::pow(profile.value(rr + h), m);
    const double sign = (r >= 0.0) ? 1.0 : -1.0;
    return sign * (wr - wl) / (2.0 * h) * std::pow(t - t0, -m / (m - 1.0));
  };
  return f;
}

/// Piecewise-bilinear interpolant of a trajectory (linear in r between cell
/// centers, linear in t between snapshots). Outside [first, last] snapshot
/// times the field is frozen at the nearest snapshot.
inline SpaceTimeField make_trajectory_field(const Trajectory& traj) {
  if (traj.snapshots.size() < 2)
    throw std::invalid_argument(
        "make_trajectory_field: need at least two snapshots");
  for (size_t k = 1; k < traj.snapshots.size(); ++k) {
    if (!(traj.snapshots[k].time > traj.snapshots[k - 1].time))
      throw std::invalid_argument(
          "make_trajectory_field: snapshots not time-ordered");
    if (!(traj.snapshots[k].grid == traj.snapshots[0].grid))
      throw std::invalid_argument("make_trajectory_field: grid mismatch");
  }
  const Grid1D grid = traj.snapshots.front().grid;

  auto interp_space = [grid](const Field& f, double r) {
    const double h = grid.h();
    double x = std::abs(r);
    if (x >= grid.R) return 0.0;
    // cell centers at (i + 1/2) h; reflect inside the first half-cell,
    // Dirichlet zero beyond the last center
    const double s = x / h - 0.5;
    if (s <= 0.0) return f.values[0];
    const int i = std::min(static_cast<int>(s), grid.N - 1);
    const double frac = s - i;
    const double left = f.values[i];
    const double right = (i + 1 < grid.N) ? f.values[i + 1] : 0.0;
    return left + frac * (right - left);
  };

  SpaceTimeField f;
  f.pme = PmeParams{2.0, grid.n};  // placeholder; caller overwrites
  f.domain_radius = grid.R;
  f.t_min = traj.snapshots.front().time;
  f.t_max = traj.snapshots.back().time;
  f.singular_time = f.t_min;
  auto snaps = traj.snapshots;  // owning copy for the closure
  f.value = [snaps, interp_space](double r, double t) {
    if (t <= snaps.front().time) return interp_space(snaps.front(), r);
    if (t >= snaps.back().time) return interp_space(snaps.back(), r);
    size_t k = 1;
    while (snaps[k].time < t) ++k;
    const Field& a = snaps[k - 1];
    const Field& b = snaps[k];
    const double frac = (t - a.time) / (b.time - a.time);
    return (1.0 - frac) * interp_space(a, r) + frac * interp_space(b, r);
  };
  return f;
}

}  // namespace pmelab
