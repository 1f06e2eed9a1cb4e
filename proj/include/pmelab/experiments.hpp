#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmelab/barenblatt.hpp"
#include "pmelab/bump.hpp"
#include "pmelab/field.hpp"
#include "pmelab/report.hpp"
#include "pmelab/solver.hpp"
#include "pmelab/trend.hpp"

namespace pmelab {

/// Normalization making the central value of the shifted comparison
/// profile exactly one at (0, 0).
inline double choose_C0(const PmeParams& pme) {
  const double m = pme.m, n = pme.n;
  const double lambda = barenblatt_lambda(pme);
  const double rhs = std::pow(2.0 * m * n / (lambda * (m - 1.0)),
                              1.0 / (m - 1.0));
  return std::pow(rhs, 1.0 / (n / 2.0 + 1.0 / (m - 1.0)));
}

/// Constants of the rescaled comparison family: beta = (m-1)n,
/// C = C0 (lambda(m-1)/(2mn)) k^{-2 beta lambda / n}, with t0 fixed by
/// vanishing at |x| = 1/k, t = 0 and theta by vanishing at |x| = 1.
struct ExampleConstants {
  double beta;
  double C;
  double t0;
  double theta;
  double C0;

  nlohmann::json to_json() const {
    return {{"schema", 1}, {"beta", beta}, {"C", C},
            {"t0", t0},    {"theta", theta}, {"C0", C0}};
  }
};

inline ExampleConstants example_constants(const PmeParams& pme, int k,
                                          double C0) {
  if (k < 1) throw std::invalid_argument("example_constants: k >= 1");
  if (!(C0 > 0.0)) throw std::invalid_argument("example_constants: C0 > 0");
  const double m = pme.m, n = pme.n;
  const double lambda = barenblatt_lambda(pme);
  const double a = lambda * (m - 1.0) / (2.0 * m * n);
  ExampleConstants ec;
  ec.C0 = C0;
  ec.beta = (m - 1.0) * n;
  ec.C = C0 * a * std::pow(double(k), -2.0 * ec.beta * lambda / n);
  // bracket-root identities: support touches |x| = 1/k at t = 0 and
  // |x| = 1 at t = theta
  ec.t0 = std::pow(a / (ec.C * k * k), n / (2.0 * lambda));
  ec.theta = std::pow(a / ec.C, n / (2.0 * lambda)) - ec.t0;
  return ec;
}

inline BarenblattParams dichotomy_barenblatt(const PmeParams& pme,
                                             const ExampleConstants& ec) {
  return BarenblattParams(pme, ec.C, -ec.t0);
}

struct DichotomyConfig {
  PmeParams pme;
  std::vector<int> k_values = {4, 8, 16, 32};
  std::function<double(int)> a_rule;  // k -> a_k
  double C0 = 0.0;                    // 0: choose_C0(pme)
  int grid_N = 256;
  double cfl_safety = 0.4;
  double t_slice = 2e-5;  // fixed small time for the un-rescaled slices
};

struct DichotomyMember {
  int k;
  ExampleConstants constants;
  Trajectory traj;              // rescaled run v on B(0,1), up to theta
  double solver_l1_error;       // L1 gap to the half-resolution run
  double comparison_violation;  // L1 mass of (B_shifted - v)_+, worst time
  double min_quarter_ball;      // min of v(., theta) on B(0, 1/4)
  double rate_bound;            // frozen lower bound c k^{-n}
  bool comparison_ok;
  bool rate_bound_ok;
};

/// Solves v_t = Lap(v^m) on B(0,1), v(., 0) = indicator of B(0, 1/k)
/// (interface cell holds the exact volume fraction), zero lateral data,
/// and verifies v >= shifted comparison profile up to twice the grid-L1
/// error. extra_times are appended to the snapshot schedule.
inline DichotomyMember run_dichotomy_member(
    const DichotomyConfig& cfg, int k,
    const std::vector<double>& extra_times = {}) {
  const double C0 = cfg.C0 > 0.0 ? cfg.C0 : choose_C0(cfg.pme);
  DichotomyMember mem;
  mem.k = k;
  mem.constants = example_constants(cfg.pme, k, C0);
  const double theta = mem.constants.theta;

  auto indicator_field = [&](const Grid1D& g) {
    std::vector<double> v(g.N);
    const double cut = 1.0 / k;
    for (int i = 0; i < g.N; ++i) {
      const double rl = g.face(i), rr = g.face(i + 1);
      const double lo = std::min(rl, cut), hi = std::min(rr, cut);
      if (g.geometry == Geometry::Slab)
        v[i] = (hi - lo) / (rr - rl);
      else
        v[i] = (std::pow(hi, g.n) - std::pow(lo, g.n)) /
               (std::pow(rr, g.n) - std::pow(rl, g.n));
    }
    return Field(g, std::move(v), 0.0);
  };

  SolveConfig scfg;
  scfg.pme = cfg.pme;
  scfg.t_end = theta;
  scfg.cfl_safety = cfg.cfl_safety;
  scfg.snapshot_times = {theta / 4.0, theta / 2.0, 3.0 * theta / 4.0, theta};
  for (double t : extra_times)
    if (t > 0.0 && t < theta) scfg.snapshot_times.push_back(t);
  std::sort(scfg.snapshot_times.begin(), scfg.snapshot_times.end());

  const Grid1D grid(Geometry::Radial, cfg.pme.n, 1.0, cfg.grid_N);
  mem.traj = solve_ivp(indicator_field(grid), scfg);

  // half-resolution reference for the grid-error estimate
  SolveConfig scfg_half = scfg;
  scfg_half.snapshot_times = {theta};
  const Grid1D grid_half(Geometry::Radial, cfg.pme.n, 1.0, cfg.grid_N / 2);
  Trajectory half = solve_ivp(indicator_field(grid_half), scfg_half);
  double l1 = 0.0;
  const Field& fine = mem.traj.at_time(theta);
  const Field& coarse = half.at_time(theta);
  for (int i = 0; i < grid_half.N; ++i) {
    const double fine_avg =
        (fine.values[2 * i] * grid.cell_volume(2 * i) +
         fine.values[2 * i + 1] * grid.cell_volume(2 * i + 1)) /
        grid_half.cell_volume(i);
    l1 += std::abs(fine_avg - coarse.values[i]) * grid_half.cell_volume(i);
  }
  mem.solver_l1_error = l1;

  const BarenblattParams bp = dichotomy_barenblatt(cfg.pme, mem.constants);
  double worst = 0.0;
  for (const Field& f : mem.traj.snapshots) {
    double deficit = 0.0;
    for (int i = 0; i < grid.N; ++i) {
      const double b = barenblatt_value(bp, grid.center(i), f.time);
      deficit += std::max(b - f.values[i], 0.0) * grid.cell_volume(i);
    }
    worst = std::max(worst, deficit);
  }
  mem.comparison_violation = worst;
  mem.comparison_ok = worst <= 2.0 * mem.solver_l1_error + 1e-12;

  double min_q = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.N; ++i)
    if (grid.center(i) <= 0.25)
      min_q = std::min(min_q, fine.values[i]);
  mem.min_quarter_ball = min_q;
  // frozen from the closed form: B(x, theta) = (1-|x|^2)^{1/(m-1)} k^{-n}
  // under the central normalization; 0.9 covers discretization slack
  const double c = 0.9 * std::pow(15.0 / 16.0, 1.0 / (cfg.pme.m - 1.0));
  mem.rate_bound = c * std::pow(double(k), -double(cfg.pme.n));
  mem.rate_bound_ok = min_q >= mem.rate_bound;
  return mem;
}

enum class DichotomyDirection { Blowup, Measure };

struct DichotomyResult {
  ClassLabel label;
  std::vector<DichotomyMember> members;
  nlohmann::json evidence;
};

/// BLOWUP: un-rescale each member via u_k(x, t) = a_k v(x, a_k^{m-1} t)
/// and check the separable rate at T_k = theta a_k^{1-m} plus unbounded
/// growth of the fixed-ball slice integrals at a fixed small time
/// (factor >= 4 first-to-last). MEASURE: pair the initial data against
/// spatial bumps, expecting a |B(0,1)| phi(0), and check the un-rescaled
/// trajectories become L1-Cauchy at a fixed positive time.
inline DichotomyResult classify_dichotomy_limit(const DichotomyConfig& cfg,
                                                DichotomyDirection dir) {
  if (!cfg.a_rule)
    throw std::invalid_argument("classify_dichotomy_limit: a_rule required");
  for (size_t i = 1; i < cfg.k_values.size(); ++i)
    if (cfg.k_values[i] <= cfg.k_values[i - 1])
      throw std::invalid_argument(
          "classify_dichotomy_limit: k_values must increase");
  if (cfg.k_values.size() < 3)
    throw InconclusiveError(
        "classify_dichotomy_limit: fewer than 3 family members; growth "
        "evidence inconclusive");
  const double m = cfg.pme.m;
  const double n = cfg.pme.n;

  // direction preconditions on the printed limits
  std::vector<double> ratio;  // (k^n / a_k)^{m-1} resp. a_k / k^n
  for (int k : cfg.k_values) {
    const double ak = cfg.a_rule(k);
    if (!(ak > 0.0))
      throw std::invalid_argument("classify_dichotomy_limit: a_k > 0");
    ratio.push_back(dir == DichotomyDirection::Blowup
                        ? std::pow(std::pow(double(k), n) / ak, m - 1.0)
                        : ak / std::pow(double(k), n));
  }
  if (dir == DichotomyDirection::Blowup) {
    if (!(ratio.back() < 0.5 * ratio.front()))
      throw std::invalid_argument(
          "classify_dichotomy_limit: (k^n/a_k)^{m-1} not tending to 0");
  } else {
    const double spread =
        *std::max_element(ratio.begin(), ratio.end()) -
        *std::min_element(ratio.begin(), ratio.end());
    if (!(spread <= 0.5 * std::abs(ratio.back())))
      throw std::invalid_argument(
          "classify_dichotomy_limit: a_k/k^n not settling to a finite a");
  }

  DichotomyResult res;
  res.evidence["schema"] = 1;
  res.evidence["direction"] =
      dir == DichotomyDirection::Blowup ? "BLOWUP" : "MEASURE";

  if (dir == DichotomyDirection::Blowup) {
    std::vector<double> slices;
    bool rates_ok = true;
    for (int k : cfg.k_values) {
      const double ak = cfg.a_rule(k);
      // rescaled time carrying the fixed original time t_slice
      const double tau = std::pow(ak, m - 1.0) * cfg.t_slice;
      DichotomyMember mem = run_dichotomy_member(cfg, k, {tau});
      rates_ok = rates_ok && mem.rate_bound_ok && mem.comparison_ok;
      const Field& slice = mem.traj.at_time(tau);
      slices.push_back(ak * slice_integral(slice, 0.25));
      res.members.push_back(std::move(mem));
    }
    bool monotone = true;
    for (size_t i = 1; i < slices.size(); ++i)
      monotone = monotone && slices[i] >= slices[i - 1];
    const double growth = slices.back() / slices.front();
    res.evidence["slice_integrals"] = slices;
    res.evidence["growth_factor"] = growth;
    res.evidence["rate_bounds_ok"] = rates_ok;
    if (!(monotone && growth >= 4.0 && rates_ok))
      throw InconclusiveError(
          "classify_dichotomy_limit: blow-up evidence not conclusive");
    res.label = ClassLabel::ClassM;
    return res;
  }

  // MEASURE direction
  const double a_limit = ratio.back();
  const int k_max = cfg.k_values.back();
  const double ak_max = cfg.a_rule(k_max);
  std::vector<double> pairings;
  {
    // spatial bumps phi(r) = h (1 - (r/rho)^2)^3 paired against
    // a_k chi_{B(0,1/k)}
    const std::vector<std::pair<double, double>> shapes = {
        {0.5, 1.0}, {0.8, 2.0}, {0.3, 0.7}};
    const double omega = unit_sphere_area(cfg.pme.n);
    for (auto [rho, amp] : shapes) {
      double integral = 0.0;
      const int Q = 4096;
      const double cut = 1.0 / k_max;
      const double dr = cut / Q;
      for (int i = 0; i < Q; ++i) {
        const double r = (i + 0.5) * dr;
        const double s = 1.0 - (r / rho) * (r / rho);
        const double phi = amp * s * s * s;
        integral += omega * std::pow(r, n - 1) * dr * ak_max * phi;
      }
      const double expected = a_limit * ball_volume(cfg.pme.n, 1.0) * amp;
      pairings.push_back(integral / expected);
    }
  }
  res.evidence["pairing_ratios"] = pairings;
  bool pairing_ok = true;
  for (double p : pairings) pairing_ok = pairing_ok && std::abs(p - 1.0) <= 0.03;

  // L1-Cauchy behaviour of the un-rescaled trajectories at a fixed time
  // safely inside every member's un-rescaled horizon theta_k a_k^{1-m}
  double t_star = std::numeric_limits<double>::infinity();
  const double C0 = cfg.C0 > 0.0 ? cfg.C0 : choose_C0(cfg.pme);
  for (int k : cfg.k_values)
    t_star = std::min(t_star, example_constants(cfg.pme, k, C0).theta *
                                  std::pow(cfg.a_rule(k), 1.0 - m));
  t_star *= 0.5;
  std::vector<Field> slices;
  for (int k : cfg.k_values) {
    const double ak = cfg.a_rule(k);
    const double tau = std::pow(ak, m - 1.0) * t_star;
    DichotomyMember mem = run_dichotomy_member(cfg, k, {tau});
    Field f = mem.traj.at_time(tau);
    for (double& v : f.values) v *= ak;
    slices.push_back(std::move(f));
    res.members.push_back(std::move(mem));
  }
  std::vector<double> l1_gaps;
  for (size_t i = 1; i < slices.size(); ++i) {
    double gap = 0.0;
    for (int c = 0; c < slices[i].grid.N; ++c)
      gap += std::abs(slices[i].values[c] - slices[i - 1].values[c]) *
             slices[i].grid.cell_volume(c);
    l1_gaps.push_back(gap);
  }
  res.evidence["l1_gaps"] = l1_gaps;
  res.evidence["measure_a"] = a_limit;
  bool cauchy = true;
  for (size_t i = 1; i < l1_gaps.size(); ++i)
    cauchy = cauchy && l1_gaps[i] <= l1_gaps[i - 1];
  if (!(pairing_ok && cauchy))
    throw InconclusiveError(
        "classify_dichotomy_limit: measure evidence not conclusive");
  res.label = ClassLabel::ClassB;
  return res;
}

/// Co-evolves an ordered pair with a shared time step and reports the
/// worst ordering violation across all steps.
inline CheckReport comparison_harness(const Field& u0, const Field& v0,
                                      const SolveConfig& cfg) {
  if (!(u0.grid == v0.grid))
    throw std::invalid_argument("comparison_harness: grid mismatch");
  for (int i = 0; i < u0.grid.N; ++i)
    if (u0.values[i] < v0.values[i])
      throw std::invalid_argument("comparison_harness: u0 >= v0 violated");
  Field u = u0, v = v0;
  double worst = 0.0;
  int worst_cell = -1;
  while (u.time < cfg.t_end - 1e-14) {
    const double dt = std::min({cfl_limit(u, cfg), cfl_limit(v, cfg),
                                cfg.t_end - u.time});
    u = step(u, dt, cfg);
    v = step(v, dt, cfg);
    for (int i = 0; i < u.grid.N; ++i) {
      const double gap = v.values[i] - u.values[i];
      if (gap > worst) {
        worst = gap;
        worst_cell = i;
      }
    }
  }
  CheckReport rep;
  rep.name = "comparison";
  rep.lhs = worst;
  rep.rhs = 1e-12;
  rep.fitted_constant = worst_cell;  // location of the worst violation
  rep.refinement_stability = 1.0;
  rep.pass = worst <= 1e-12;
  return rep;
}

/// Sub-cylinder comparison: evolves h from min(u(., t1), cap) with zero
/// lateral data on B(0, R_sub) and checks h <= u inside up to tol.
inline CheckReport subcylinder_check(const SpaceTimeField& u, double R_sub,
                                     double t1, double t2, double cap, int N,
                                     double tol) {
  if (R_sub > u.domain_radius + 1e-12 || !(t2 > t1))
    throw std::invalid_argument("subcylinder_check: bad sub-cylinder");
  const Grid1D grid(Geometry::Radial, u.pme.n, R_sub, N);
  Field h0 = Field::from_function(
      grid, [&](double r) { return std::min(u.eval(r, t1), cap); }, t1);
  SolveConfig cfg;
  cfg.pme = u.pme;
  cfg.t_end = t2;
  const int samples = 16;
  for (int j = 1; j <= samples; ++j)
    cfg.snapshot_times.push_back(t1 + (t2 - t1) * j / samples);
  Trajectory traj = solve_ivp(h0, cfg);
  double worst = -std::numeric_limits<double>::infinity();
  for (const Field& f : traj.snapshots)
    for (int i = 0; i < grid.N; ++i)
      worst = std::max(worst, f.values[i] - u.eval(grid.center(i), f.time));
  CheckReport rep;
  rep.name = "subcylinder";
  rep.lhs = worst;
  rep.rhs = tol;
  rep.fitted_constant = worst / std::max(tol, 1e-300);
  rep.refinement_stability = 1.0;
  rep.pass = worst <= tol;
  return rep;
}

}  // namespace pmelab
