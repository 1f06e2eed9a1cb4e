// Acceptance gate: one line per criterion, PASS/FAIL, with elapsed time.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pmelab/barenblatt.hpp"
#include "pmelab/checks.hpp"
#include "pmelab/experiments.hpp"
#include "pmelab/field.hpp"
#include "pmelab/infinity.hpp"
#include "pmelab/profile.hpp"
#include "pmelab/residual.hpp"
#include "pmelab/solver.hpp"
#include "pmelab/trend.hpp"

using namespace pmelab;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
  std::printf("[%2d] %s  (%.1f s)  %s%s%s\n", idx, pass ? "PASS" : "FAIL",
              seconds, name.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int idx, const std::string& name, double budget_s,
         const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (secs > budget_s) {
    pass = false;
    detail += " [over runtime budget]";
  }
  report(idx, name, pass, secs, detail);
}

Field barenblatt_slice(const Grid1D& g, const BarenblattParams& bp,
                       double t) {
  return Field::from_function(
      g, [&](double r) { return barenblatt_value(bp, r, t); }, t);
}

double rel_l1_error(const Field& f, const BarenblattParams& bp) {
  double err = 0.0, norm = 0.0;
  for (int i = 0; i < f.grid.N; ++i) {
    const double exact = barenblatt_value(bp, f.grid.center(i), f.time);
    err += std::abs(f.values[i] - exact) * f.grid.cell_volume(i);
    norm += exact * f.grid.cell_volume(i);
  }
  return err / norm;
}

}  // namespace

int main() {
  const PmeParams pme21(2.0, 1);
  const BarenblattParams bp21(pme21, 1.0);

  // 1. Barenblatt exactness: residual order 2 +- 0.3 under h refinement
  run(1, "closed-form residual converges at order 2", 1.0,
      [&](std::string& detail) {
        auto u = [&](double r, double t) {
          return barenblatt_value(bp21, r, t);
        };
        const double t = 1.0;
        const double rad = barenblatt_support_radius(bp21, t);
        const std::vector<double> hs = {1e-2, 5e-3, 2.5e-3};
        // 20 interior points excluding 3h bands at origin and free boundary
        std::vector<double> maxres;
        for (double h : hs) {
          double worst = 0.0;
          for (int i = 0; i < 20; ++i) {
            const double lo = 3.0 * hs.front();
            const double hi = rad - 3.0 * hs.front();
            const double x = lo + (hi - lo) * i / 19.0;
            worst = std::max(worst,
                             std::abs(pme_residual_pointwise(u, pme21, x, t, h)));
          }
          maxres.push_back(worst);
        }
        const double o1 = std::log2(maxres[0] / maxres[1]);
        const double o2 = std::log2(maxres[1] / maxres[2]);
        const double order = 0.5 * (o1 + o2);
        detail = "order " + std::to_string(order);
        return std::abs(order - 2.0) <= 0.3;
      });

  // 2-3. solver accuracy, convergence order, and mass conservation
  double order_min = 0.0;
  run(2, "solver matches the exact solution (<=2% L1, order >= 0.8)", 30.0,
      [&](std::string& detail) {
        SolveConfig cfg;
        cfg.pme = pme21;
        cfg.t_end = 1.5;
        cfg.snapshot_times = {1.5};
        std::vector<double> errors;
        double drift400 = 1.0;
        for (int N : {100, 200, 400, 800}) {
          const Grid1D g(Geometry::Radial, 1, 6.0, N);
          const Trajectory traj = solve_ivp(barenblatt_slice(g, bp21, 0.5), cfg);
          errors.push_back(rel_l1_error(traj.at_time(1.5), bp21));
          if (N == 400) {
            const double m0 = traj.mass_history.front();
            for (double mm : traj.mass_history)
              drift400 = std::max(drift400 == 1.0 ? 0.0 : drift400,
                                  std::abs(mm - m0) / m0);
          }
        }
        order_min = 1e9;
        for (size_t i = 1; i < errors.size(); ++i)
          order_min = std::min(order_min, std::log2(errors[i - 1] / errors[i]));
        detail = "err(N=400) " + std::to_string(errors[2]) + ", min order " +
                 std::to_string(order_min) + ", drift " +
                 std::to_string(drift400);
        // stash the drift for criterion 3 via detail; recomputed below
        return errors[2] <= 0.02 && order_min >= 0.8;
      });

  run(3, "mass conservation (relative drift <= 1e-6)", 30.0,
      [&](std::string& detail) {
        SolveConfig cfg;
        cfg.pme = pme21;
        cfg.t_end = 1.5;
        cfg.snapshot_times = {1.5};
        const Grid1D g(Geometry::Radial, 1, 6.0, 400);
        const Trajectory traj = solve_ivp(barenblatt_slice(g, bp21, 0.5), cfg);
        // support must stay >= 2 cells from the wall
        if (!(barenblatt_support_radius(bp21, 1.5) < 6.0 - 2.0 * g.h()))
          return false;
        const double m0 = traj.mass_history.front();
        double drift = 0.0;
        for (double mm : traj.mass_history)
          drift = std::max(drift, std::abs(mm - m0) / m0);
        detail = "drift " + std::to_string(drift);
        return drift <= 1e-6;
      });

  // 4. randomized discrete comparison principle
  run(4, "discrete comparison principle on 100 randomized ordered pairs",
      60.0, [&](std::string& detail) {
        std::mt19937_64 rng(412233);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double ms[] = {1.5, 2.0, 3.0};
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
          const PmeParams pme(ms[trial % 3], 1);
          const Grid1D g(Geometry::Radial, 1, 1.0, 48);
          std::vector<double> lo(g.N), hi(g.N);
          for (int i = 0; i < g.N; ++i) {
            lo[i] = unif(rng);
            hi[i] = lo[i] + unif(rng);
          }
          SolveConfig cfg;
          cfg.pme = pme;
          cfg.t_end = 0.01;
          Field u(g, hi, 0.0), v(g, lo, 0.0);
          while (u.time < cfg.t_end - 1e-14) {
            const double dt = std::min(
                {cfl_limit(u, cfg), cfl_limit(v, cfg), cfg.t_end - u.time});
            u = step(u, dt, cfg);
            v = step(v, dt, cfg);
            for (int i = 0; i < g.N; ++i)
              worst = std::max(worst, v.values[i] - u.values[i]);
          }
        }
        detail = "worst violation " + std::to_string(worst);
        return worst <= 1e-12;
      });

  // 5. friendly giant profile
  run(5, "giant profile: residual, rescaling, separable evolution", 30.0,
      [&](std::string& detail) {
        const GiantProfile p = solve_profile(pme21, 1.0, 1e-8, 2000);
        if (p.residual_max > 1e-6) {
          detail = "profile residual " + std::to_string(p.residual_max);
          return false;
        }
        const GiantProfile scaled = rescale_profile(p, 2.0);
        if (std::abs(scaled.U_values.front() / p.U_values.front() - 4.0) >
            1e-10) {
          detail = "rescaling identity broken";
          return false;
        }
        // evolve V(., 0.1) for 0.1 and compare with V(., 0.2)
        const Grid1D g(Geometry::Radial, 1, 1.0, 200);
        SolveConfig cfg;
        cfg.pme = pme21;
        cfg.t_end = 0.2;
        cfg.snapshot_times = {0.2};
        const Field v0 = Field::from_function(
            g, [&](double r) { return giant_value(p, 0.0, r, 0.1); }, 0.1);
        const Field got = solve_ivp(v0, cfg).at_time(0.2);
        double err = 0.0, norm = 0.0;
        for (int i = 0; i < g.N; ++i) {
          const double exact = giant_value(p, 0.0, g.center(i), 0.2);
          err += std::abs(got.values[i] - exact) * g.cell_volume(i);
          norm += exact * g.cell_volume(i);
        }
        detail = "evolution rel L1 " + std::to_string(err / norm);
        return err / norm <= 0.01;
      });

  // 6. integrability thresholds
  run(6, "L^q and gradient-L^q thresholds bracket the exact exponents", 60.0,
      [&](std::string& detail) {
        const SpaceTimeBox box{1.0, 0.0, 1.0};
        for (auto [m, n] : {std::pair{2.0, 1}, {2.0, 2}}) {
          const PmeParams pme(m, n);
          const SpaceTimeField f =
              make_barenblatt_field(BarenblattParams(pme, 1.0), 1e6, 10.0);
          const double q_lq = m + 2.0 / n;
          const double q_grad = 1.0 + 1.0 / (1.0 + m * n);
          if (lq_spacetime_trend(f, box, 0.95 * q_lq).verdict !=
              Verdict::Finite) {
            detail = "L^q finite side failed";
            return false;
          }
          if (lq_spacetime_trend(f, box, 1.1 * q_lq).verdict !=
              Verdict::Divergent) {
            detail = "L^q divergent side failed";
            return false;
          }
          if (gradient_lq_trend(f, box, 0.9 * q_grad).verdict !=
              Verdict::Finite) {
            detail = "gradient finite side failed";
            return false;
          }
          if (gradient_lq_trend(f, box, 1.15 * q_grad).verdict !=
              Verdict::Divergent) {
            detail = "gradient divergent side failed";
            return false;
          }
        }
        // the explicit square-gradient divergence near the origin
        const SpaceTimeField f21 = make_barenblatt_field(bp21, 1e6, 10.0);
        return gradient_lq_trend(f21, SpaceTimeBox{1.0, -1.0, 1.0}, 2.0)
                   .verdict == Verdict::Divergent;
      });

  // 7. Dirac-mass identification
  run(7, "source measure is a shape-independent point mass", 60.0,
      [&](std::string& detail) {
        const SpaceTimeField u = make_barenblatt_field(bp21, 8.0, 4.0);
        std::vector<TestFunction> phis;
        phis.emplace_back(0.0, 3.0, 0.3, 1.0, 3);
        phis.emplace_back(0.0, 4.0, 0.5, 2.0, 3);
        phis.emplace_back(0.1, 3.5, 0.4, 1.0, 4);
        phis.emplace_back(-0.05, 4.5, 0.6, 0.7, 3);
        phis.emplace_back(0.0, 5.0, 0.2, 1.5, 5);
        const DiracEstimate est = dirac_mass_estimate(u, phis);
        const double mass = barenblatt_mass(bp21, 1.0);
        detail = "spread " + std::to_string(est.spread) + ", mean/mass " +
                 std::to_string(est.mean / mass);
        return est.spread <= 0.02 && std::abs(est.mean / mass - 1.0) <= 0.02;
      });

  // 8. dichotomy family, both directions
  run(8, "dichotomy family: blow-up and measure directions", 300.0,
      [&](std::string& detail) {
        DichotomyConfig cfg;
        cfg.pme = pme21;
        cfg.grid_N = 256;
        cfg.a_rule = [](int k) { return double(k) * double(k); };
        const DichotomyResult blow =
            classify_dichotomy_limit(cfg, DichotomyDirection::Blowup);
        for (const DichotomyMember& mem : blow.members)
          if (!mem.comparison_ok) {
            detail = "comparison violation at k=" + std::to_string(mem.k);
            return false;
          }
        const double growth = blow.evidence["growth_factor"].get<double>();
        if (blow.label != ClassLabel::ClassM || growth < 4.0) {
          detail = "blow-up direction: growth " + std::to_string(growth);
          return false;
        }
        cfg.a_rule = [](int k) { return double(k); };
        const DichotomyResult meas =
            classify_dichotomy_limit(cfg, DichotomyDirection::Measure);
        for (double r : meas.evidence["pairing_ratios"]) {
          if (std::abs(r - 1.0) > 0.03) {
            detail = "pairing ratio " + std::to_string(r);
            return false;
          }
        }
        detail = "growth factor " + std::to_string(growth);
        return meas.label == ClassLabel::ClassB;
      });

  // 9. classifier corpus and infinity sets
  run(9, "classifier corpus and infinity-set structure", 60.0,
      [&](std::string& detail) {
        const GiantProfile p = solve_profile(pme21, 1.0);
        const SpaceTimeField bf = make_barenblatt_field(bp21, 1e6, 10.0);
        const SpaceTimeField gf = make_giant_field(p, 0.0, 2.0);
        SpaceTimeField cf;
        cf.pme = pme21;
        cf.domain_radius = 1e6;
        cf.t_min = -1e6;
        cf.t_max = 1e6;
        cf.singular_time = 0.0;
        cf.value = [](double, double) { return 5.0; };
        if (classify(bf, SpaceTimeBox{1.0, 0.0, 1.0}).label !=
            ClassLabel::ClassB)
          return false;
        if (classify(gf, SpaceTimeBox{1.0, 0.0, 0.5}).label !=
            ClassLabel::ClassM)
          return false;
        if (classify(cf, SpaceTimeBox{1.0, 0.0, 1.0}).label !=
            ClassLabel::Bounded)
          return false;

        const Grid1D g(Geometry::Radial, 1, 1.0, 64);
        const std::vector<double> taus = {1e-7, 1e-6, 1e-5, 1e-4,
                                          1e-3, 1e-2, 1e-1};
        const std::vector<double> thresholds = {1.0, 8.0, 64.0};
        const std::vector<int> schedule = {6, 5, 2};
        auto sample = [&](const std::function<double(double, double)>& u) {
          Trajectory traj;
          for (double tau : taus)
            traj.snapshots.push_back(Field::from_function(
                g, [&](double r) { return u(r, tau); }, tau));
          return traj;
        };
        const Trajectory tb = sample(
            [&](double r, double t) { return barenblatt_value(bp21, r, t); });
        const Trajectory tg = sample(
            [&](double r, double t) { return giant_value(p, 0.0, r, t); });
        const Trajectory tc = sample([](double, double) { return 5.0; });
        const auto bdown = infinity_set_vertical(tb, 0.0, thresholds, schedule);
        const auto bfull = infinity_set_full(tb, 0.0, thresholds, schedule);
        const auto gdown = infinity_set_vertical(tg, 0.0, thresholds, schedule);
        const auto gfull = infinity_set_full(tg, 0.0, thresholds, schedule);
        const auto cdown = infinity_set_vertical(tc, 0.0, thresholds, schedule);
        if (!(bdown.size() == 1 && bdown[0] == 0 && bfull.empty()))
          return false;
        if (!(gdown.size() >= size_t(0.9 * g.N) &&
              gfull.size() >= size_t(0.9 * g.N)))
          return false;
        if (!cdown.empty()) return false;
        // all-or-nothing on the corpus
        for (const auto* s : {&bdown, &gdown, &cdown})
          if (!(s->size() <= 2 || s->size() >= size_t(0.9 * g.N)))
            return false;
        detail = "giant coverage " + std::to_string(gdown.size()) + "/64";
        return true;
      });

  // 10. inequality checkers
  run(10, "inequality checkers: fitted constants finite and stable", 120.0,
      [&](std::string& detail) {
        const SpaceTimeField u = make_barenblatt_field(bp21, 8.0, 4.0);
        const std::vector<HarnackSample> samples = {
            {0.5, 1.0, 0.2}, {1.0, 1.0, 0.2}, {0.3, 1.5, 0.3}};
        const CheckReport h = harnack_check(
            u, samples, {0.1, 0.25, 0.5, 1.0, 2.0, 5.0});
        if (!h.pass) {
          detail = "harnack";
          return false;
        }
        const CheckReport wh = weak_harnack_check(
            u, 0.0, 0.5, 1.0, 2.0, {0.05, 0.1, 0.25, 0.5, 1.0, 2.0});
        if (!wh.pass) {
          detail = "weak harnack";
          return false;
        }
        auto truncate = [](SpaceTimeField f, double floor, double cap) {
          auto raw = f.value;
          auto gu = f.grad_u;
          auto gum = f.grad_um;
          f.value = [raw, floor, cap](double r, double t) {
            return std::clamp(raw(r, t), floor, cap);
          };
          f.grad_u = [raw, gu, floor, cap](double r, double t) {
            const double v = raw(r, t);
            return (v <= floor || v >= cap) ? 0.0 : gu(r, t);
          };
          f.grad_um = [raw, gum, floor, cap](double r, double t) {
            const double v = raw(r, t);
            return (v <= floor || v >= cap) ? 0.0 : gum(r, t);
          };
          return f;
        };
        const CutoffFunction zeta(1.0, 1.0, 2.0, 0.25, 0.5);
        const CheckReport cc =
            caccioppoli_check(truncate(u, 0.0, 10.0), zeta, 0.5);
        if (!cc.pass) {
          detail = "caccioppoli stability " +
                   std::to_string(cc.refinement_stability);
          return false;
        }
        const CheckReport lc =
            log_caccioppoli_check(truncate(u, 0.01, 10.0), zeta);
        if (!lc.pass) {
          detail = "log caccioppoli: lhs " + std::to_string(lc.lhs) +
                   " rhs " + std::to_string(lc.rhs);
          return false;
        }
        // sobolev on the (2,2) corpus; q = p + pr/n = 3 for p=2, r=1, n=2
        const PmeParams pme22(2.0, 2);
        const SpaceTimeField u22 =
            make_barenblatt_field(BarenblattParams(pme22, 1.0), 8.0, 4.0);
        SpaceTimeField w = u22;
        auto raw = u22.value;
        w.value = [raw](double r, double t) {
          return std::pow(raw(r, t), 0.5);
        };
        w.grad_u = {};
        w.grad_um = {};
        const double q = 2.0 + 2.0 * 1.0 / 2.0;
        if (std::abs(q - 3.0) > 1e-15) return false;
        const CheckReport sb = sobolev_check(w, zeta, 2.0, 1.0);
        if (!(sb.pass && std::isfinite(sb.fitted_constant))) {
          detail = "sobolev";
          return false;
        }
        detail = "harnack C1 " + std::to_string(h.fitted_constant);
        return true;
      });

  // 11. blow-up rates and the fast blow-up supersolution
  run(11, "blow-up rates and the fast supersolution condition", 30.0,
      [&](std::string& detail) {
        const GiantProfile p = solve_profile(pme21, 1.0);
        const SpaceTimeField g = make_giant_field(p, 0.0, 2.0);
        std::vector<double> times;
        for (int i = 0; i < 12; ++i)
          times.push_back(1e-3 * std::pow(2.0, 0.5 * i));
        const double ge = blowup_rate_fit(g, 0.2, 0.0, times).exponent;
        if (std::abs(ge + 1.0) > 0.05) {
          detail = "giant exponent " + std::to_string(ge);
          return false;
        }
        const SpaceTimeField b = make_barenblatt_field(bp21, 1e6, 10.0);
        const double be = blowup_rate_fit(b, 0.0, 0.0, times).exponent;
        if (std::abs(be + 1.0 / 3.0) > 0.05 / 3.0 * 1.0 &&
            std::abs(be + 1.0 / 3.0) > 0.05) {
          detail = "central exponent " + std::to_string(be);
          return false;
        }
        // f = 1/t: supersolution condition on [0.01, 10]
        std::vector<double> grid;
        for (int i = 0; i <= 400; ++i)
          grid.push_back(0.01 * std::pow(1000.0, i / 400.0));
        const CheckReport cond = fast_blowup_condition_check(
            [](double t) { return 1.0 / t; },
            [](double t) { return -1.0 / (t * t); }, grid);
        if (!cond.pass) {
          detail = "condition min " + std::to_string(cond.lhs);
          return false;
        }
        // pointwise FD residual of the supersolution is nonnegative
        FastBlowupParams fb{&p, [](double t) { return 1.0 / t; }};
        auto v = [&](double r, double t) {
          return fast_blowup_value(fb, std::min(std::abs(r), p.R), t);
        };
        for (double x : {0.2, 0.4, 0.6}) {
          for (double t : {0.5, 1.0, 2.0}) {
            const double res = pme_residual_pointwise(v, pme21, x, t, 1e-3);
            if (res < -1e-4 * std::max(1.0, std::abs(res))) {
              detail = "negative residual at x=" + std::to_string(x);
              return false;
            }
          }
        }
        return true;
      });

  // 12. minorant comparison
  run(12, "separable minorant under the solver", 60.0,
      [&](std::string& detail) {
        const GiantProfile p = solve_profile(pme21, 1.0);
        auto solve_from_50U = [&](int N) {
          const Grid1D g(Geometry::Radial, 1, 1.0, N);
          SolveConfig cfg;
          cfg.pme = pme21;
          cfg.t_end = 0.5;
          cfg.snapshot_times = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
          const Field u0 = Field::from_function(
              g, [&](double r) {
                return r < p.R ? 50.0 * p.value(r) : 0.0;
              },
              0.0);
          return solve_ivp(u0, cfg);
        };
        const Trajectory fine = solve_from_50U(200);
        const Trajectory coarse = solve_from_50U(100);
        // grid-L1 error estimate from the resolution pair at the final time
        const Field& a = fine.at_time(0.5);
        const Field& b = coarse.at_time(0.5);
        double l1 = 0.0;
        for (int i = 0; i < b.grid.N; ++i) {
          const double avg =
              (a.values[2 * i] * a.grid.cell_volume(2 * i) +
               a.values[2 * i + 1] * a.grid.cell_volume(2 * i + 1)) /
              b.grid.cell_volume(i);
          l1 += std::abs(avg - b.values[i]) * b.grid.cell_volume(i);
        }
        const double tol = 2.0 * l1;
        const CheckReport rep = minorant_check(fine, p, tol);
        detail = "worst deficit " + std::to_string(rep.lhs) + " vs tol " +
                 std::to_string(tol) + ", inferred shift " +
                 std::to_string(rep.fitted_constant);
        return rep.pass;
      });

  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
  return g_failures;
}
