#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pmelab/common.hpp"

namespace pmelab {

enum class Geometry { Slab, Radial };

/// Uniform cell-centred grid over [0, R].
struct Grid1D {
  Geometry geometry;
  int n;  // spatial dimension (radial); 1 for slab
  double R;
  int N;

  Grid1D(Geometry g, int n_, double R_, int N_)
      : geometry(g), n(g == Geometry::Slab ? 1 : n_), R(R_), N(N_) {
    if (N < 8) throw std::invalid_argument("Grid1D: N >= 8 required");
    if (!(R > 0.0)) throw std::invalid_argument("Grid1D: R > 0 required");
    if (g == Geometry::Radial && n_ < 1)
      throw std::invalid_argument("Grid1D: dimension >= 1 required");
  }

  double h() const { return R / N; }
  double center(int i) const { return (i + 0.5) * h(); }
  double face(int i) const { return i * h(); }

  /// Area of the face at radius r (with unit-sphere factor); the symmetry
  /// face at r = 0 always carries zero flux.
  double face_area(int i) const {
    if (i == 0) return 0.0;
    if (geometry == Geometry::Slab) return 1.0;
    return unit_sphere_area(n) * std::pow(face(i), n - 1);
  }

  double cell_volume(int i) const {
    if (geometry == Geometry::Slab) return h();
    const double rl = face(i), rr = face(i + 1);
    return unit_sphere_area(n) *
           (std::pow(rr, n) - std::pow(rl, n)) / n;
  }

  bool operator==(const Grid1D& o) const {
    return geometry == o.geometry && n == o.n && R == o.R && N == o.N;
  }
};

/// Cell-averaged nonnegative density at a fixed time.
struct Field {
  Grid1D grid;
  std::vector<double> values;
  double time;

  Field(Grid1D g, std::vector<double> v, double t)
      : grid(g), values(std::move(v)), time(t) {
    if (static_cast<int>(values.size()) != grid.N)
      throw std::invalid_argument("Field: value count != cell count");
    for (double x : values)
      if (!(x >= 0.0)) throw std::invalid_argument("Field: negative value");
  }

  static Field from_function(const Grid1D& g,
                             const std::function<double(double)>& f,
                             double t) {
    std::vector<double> v(g.N);
    for (int i = 0; i < g.N; ++i) v[i] = std::max(f(g.center(i)), 0.0);
    return Field(g, std::move(v), t);
  }

  double max_value() const {
    double m = 0.0;
    for (double x : values) m = std::max(m, x);
    return m;
  }
};

struct SolveConfig {
  PmeParams pme;
  double t_end;
  double cfl_safety = 0.4;
  std::vector<double> snapshot_times;
  double dt_max = std::numeric_limits<double>::infinity();
  double dt_fallback = 1e-4;  // step used when the field is identically zero
};

struct Trajectory {
  std::vector<Field> snapshots;
  std::vector<double> dt_history;
  std::vector<double> mass_history;
  long long total_steps = 0;

  const Field& at_time(double t, double tol = 1e-9) const {
    for (const Field& f : snapshots)
      if (std::abs(f.time - t) <= tol * std::max(1.0, std::abs(t))) return f;
    throw std::out_of_range("Trajectory::at_time: no snapshot at t");
  }
};

/// Mass of the slice over cells within sub_radius (default: whole domain).
inline double slice_integral(const Field& f, double sub_radius = -1.0) {
  const double cap = sub_radius < 0.0 ? f.grid.R : sub_radius;
  if (cap > f.grid.R * (1.0 + 1e-12))
    throw std::invalid_argument("slice_integral: sub_radius > R");
  double total = 0.0;
  for (int i = 0; i < f.grid.N; ++i) {
    if (f.grid.center(i) <= cap)
      total += f.values[i] * f.grid.cell_volume(i);
  }
  return total;
}

/// Largest stable explicit step: cfl_safety * h^2 / (2 n m max(u)^{m-1}).
/// Falls back to dt_fallback (capped by dt_max) when the field vanishes.
inline double cfl_limit(const Field& f, const SolveConfig& cfg) {
  const double h = f.grid.h();
  const int n_eff = f.grid.geometry == Geometry::Radial ? f.grid.n : 1;
  const double umax = f.max_value();
  const double diffusivity =
      2.0 * n_eff * cfg.pme.m * pow_nonneg(umax, cfg.pme.m - 1.0) + 1e-300;
  const double dt = cfg.cfl_safety * h * h / diffusivity;
  const double fallback = std::min(cfg.dt_fallback, cfg.dt_max);
  return std::min(umax == 0.0 ? fallback : dt, cfg.dt_max);
}

/// One explicit conservative update of u_t = div(grad(u^m)) with zero-flux
/// symmetry face at r = 0 and Dirichlet u = 0 at r = R imposed through the
/// antisymmetric ghost value w_ghost = -w_{N-1}.
inline Field step(const Field& f, double dt, const SolveConfig& cfg) {
  if (dt > cfl_limit(f, cfg) * (1.0 + 1e-12))
    throw std::invalid_argument("step: dt exceeds the CFL limit");
  const int N = f.grid.N;
  const double h = f.grid.h();
  const double m = cfg.pme.m;
  std::vector<double> w(N);
  for (int i = 0; i < N; ++i) w[i] = pow_nonneg(f.values[i], m);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double w_left = (i == 0) ? w[0] : w[i - 1];  // unused at i==0
    const double w_right = (i == N - 1) ? -w[N - 1] : w[i + 1];
    const double flux_left =
        (i == 0) ? 0.0 : f.grid.face_area(i) * (w[i] - w_left) / h;
    const double flux_right = f.grid.face_area(i + 1) * (w_right - w[i]) / h;
    out[i] = f.values[i] + dt * (flux_right - flux_left) / f.grid.cell_volume(i);
    out[i] = std::max(out[i], 0.0);
  }
  return Field(f.grid, std::move(out), f.time + dt);
}

struct SolverAbort : std::runtime_error {
  long long step_index;
  SolverAbort(const std::string& msg, long long idx)
      : std::runtime_error(msg), step_index(idx) {}
};

/// Advances u0 to cfg.t_end, clipping dt so every snapshot time is hit
/// exactly. Deterministic for a fixed config.
inline Trajectory solve_ivp(const Field& u0, const SolveConfig& cfg) {
  if (!(cfg.t_end > u0.time))
    throw std::invalid_argument("solve_ivp: t_end must exceed start time");
  std::vector<double> stops = cfg.snapshot_times;
  for (double s : stops)
    if (s < u0.time || s > cfg.t_end)
      throw std::invalid_argument("solve_ivp: snapshot outside time range");
  stops.push_back(cfg.t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  Trajectory traj;
  Field u = u0;
  const Grid1D& g = u.grid;
  const int N = g.N;
  const double h = g.h();
  const double m = cfg.pme.m;
  const int n_eff = g.geometry == Geometry::Radial ? g.n : 1;
  const double dt_fallback = std::min(cfg.dt_fallback, cfg.dt_max);
  // geometric factors are step-invariant; hoist them out of the hot loop
  std::vector<double> face_over_h(N + 1), vol(N), inv_vol(N);
  for (int i = 0; i <= N; ++i) face_over_h[i] = g.face_area(i) / h;
  for (int i = 0; i < N; ++i) {
    vol[i] = g.cell_volume(i);
    inv_vol[i] = 1.0 / vol[i];
  }
  std::vector<double> w(N);
  double umax = u.max_value();
  traj.mass_history.push_back(slice_integral(u));
  size_t next_stop = 0;
  while (next_stop < stops.size()) {
    const double target = stops[next_stop];
    if (std::abs(u.time - target) < 1e-14 * std::max(1.0, target)) {
      bool is_snapshot =
          std::find(cfg.snapshot_times.begin(), cfg.snapshot_times.end(),
                    target) != cfg.snapshot_times.end();
      if (is_snapshot) {
        Field snap = u;
        snap.time = target;
        traj.snapshots.push_back(std::move(snap));
      }
      ++next_stop;
      continue;
    }
    const double diffusivity =
        2.0 * n_eff * m * pow_nonneg(umax, m - 1.0) + 1e-300;
    double dt = umax == 0.0 ? dt_fallback
                            : std::min(cfg.cfl_safety * h * h / diffusivity,
                                       cfg.dt_max);
    dt = std::min(dt, target - u.time);
    for (int i = 0; i < N; ++i) w[i] = pow_nonneg(u.values[i], m);
    double mass = 0.0, new_max = 0.0;
    for (int i = 0; i < N; ++i) {
      const double w_right = (i == N - 1) ? -w[N - 1] : w[i + 1];
      const double flux_left =
          (i == 0) ? 0.0 : face_over_h[i] * (w[i] - w[i - 1]);
      const double flux_right = face_over_h[i + 1] * (w_right - w[i]);
      const double v =
          std::max(u.values[i] + dt * (flux_right - flux_left) * inv_vol[i],
                   0.0);
      u.values[i] = v;
      mass += v * vol[i];
      new_max = std::max(new_max, v);
    }
    u.time += dt;
    umax = new_max;
    traj.dt_history.push_back(dt);
    traj.mass_history.push_back(mass);
    ++traj.total_steps;
    if (!std::isfinite(mass) || !std::isfinite(new_max))
      throw SolverAbort("solve_ivp: non-finite value", traj.total_steps);
  }
  return traj;
}

/// CSV rows `t,r,u` (snapshot-major), full double precision.
inline void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,r,u\n";
  char buf[120];
  for (const Field& f : traj.snapshots) {
    for (int i = 0; i < f.grid.N; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", f.time,
                    f.grid.center(i), f.values[i]);
      os << buf;
    }
  }
}

inline nlohmann::json trajectory_metadata(const Trajectory& traj) {
  double drift = 0.0;
  if (!traj.mass_history.empty() && traj.mass_history.front() > 0.0) {
    const double m0 = traj.mass_history.front();
    for (double m : traj.mass_history)
      drift = std::max(drift, std::abs(m - m0) / m0);
  }
  nlohmann::json j = {{"schema", 1},
                      {"total_steps", traj.total_steps},
                      {"mass_drift", drift}};
  if (!traj.snapshots.empty()) {
    const Grid1D& g = traj.snapshots.front().grid;
    j["grid"] = {{"geometry", g.geometry == Geometry::Slab ? "slab" : "radial"},
                 {"n", g.n},
                 {"R", g.R},
                 {"N", g.N}};
  }
  return j;
}

}  // namespace pmelab
