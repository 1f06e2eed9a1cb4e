#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmelab/common.hpp"
#include "pmelab/report.hpp"

namespace pmelab {

/// Radial profile U > 0 of the separable blow-up solution, solving
/// div(grad(U^m)) + U/(m-1) = 0 with U(R) = 0. Stored as samples of U on a
/// grid over [0, R]; the solver works in the smooth variable w = U^m.
struct GiantProfile {
  PmeParams pme;
  double R;
  std::vector<double> r_grid;
  std::vector<double> U_values;
  double w0;            // shooting value w(0) = U(0)^m
  double residual_max;  // achieved ODE residual bound (interior points)

  GiantProfile(PmeParams pme_, double R_, std::vector<double> r,
               std::vector<double> U, double w0_, double residual_max_)
      : pme(pme_),
        R(R_),
        r_grid(std::move(r)),
        U_values(std::move(U)),
        w0(w0_),
        residual_max(residual_max_) {
    validate();
  }

  void validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("GiantProfile: R > 0");
    if (r_grid.size() != U_values.size() || r_grid.size() < 2)
      throw std::invalid_argument("GiantProfile: grid/value size mismatch");
    if (!(U_values.front() > 0.0))
      throw std::invalid_argument("GiantProfile: U(0) must be positive");
    for (size_t i = 1; i < r_grid.size(); ++i) {
      if (!(r_grid[i] > r_grid[i - 1]))
        throw std::invalid_argument("GiantProfile: r_grid not increasing");
      if (i + 1 < r_grid.size() && !(U_values[i] < U_values[i - 1]))
        throw std::invalid_argument("GiantProfile: U not strictly decreasing");
    }
    const double boundary_tol = 1e-6 * U_values.front();
    if (std::abs(U_values.back()) > boundary_tol)
      throw std::invalid_argument("GiantProfile: U(R) not zero");
  }

  /// U at radius x, by 4-point Lagrange interpolation of w = U^m.
  double value(double x) const {
    if (x < 0.0 || x > R * (1.0 + 1e-12))
      throw std::out_of_range("GiantProfile::value: radius outside [0, R]");
    x = std::min(x, R);
    const double w = interp_w(x);
    return w <= 0.0 ? 0.0 : std::pow(w, 1.0 / pme.m);
  }

 private:
  double interp_w(double x) const {
    const size_t N = r_grid.size();
    auto it = std::upper_bound(r_grid.begin(), r_grid.end(), x);
    size_t j = static_cast<size_t>(it - r_grid.begin());
    // 4-point stencil centred on the bracketing interval
    size_t lo = (j >= 2) ? j - 2 : 0;
    if (lo + 4 > N) lo = N - 4;
    double result = 0.0;
    for (size_t a = lo; a < lo + 4; ++a) {
      double basis = 1.0;
      for (size_t b = lo; b < lo + 4; ++b) {
        if (a == b) continue;
        basis *= (x - r_grid[b]) / (r_grid[a] - r_grid[b]);
      }
      result += basis * std::pow(U_values[a], pme.m);
    }
    return result;
  }
};

namespace detail {

// RHS of the first-order system for w'' = -w_+^{1/m}/(m-1) - ((n-1)/r) w'.
// At r = 0 symmetry gives w''(0) = -w_+^{1/m}/(n(m-1)).
inline double profile_rhs(const PmeParams& pme, double r, double w,
                          double wp) {
  const double src =
      -std::pow(std::max(w, 0.0), 1.0 / pme.m) / (pme.m - 1.0);
  if (r == 0.0) return src / pme.n;
  return src - (pme.n - 1) / r * wp;
}

// Fixed-step RK4 integration of (w, w') from r = 0 out to R with N steps.
// Returns the whole w-trace (N+1 samples). Negative w is clamped inside the
// source term only, so the trace continues linearly past a zero crossing.
inline std::vector<double> integrate_profile(const PmeParams& pme, double w0,
                                             double R, int N) {
  std::vector<double> trace(N + 1);
  const double h = R / N;
  double w = w0, wp = 0.0, r = 0.0;
  trace[0] = w;
  for (int i = 0; i < N; ++i) {
    const double k1w = wp, k1p = profile_rhs(pme, r, w, wp);
    const double k2w = wp + 0.5 * h * k1p,
                 k2p = profile_rhs(pme, r + 0.5 * h, w + 0.5 * h * k1w,
                                   wp + 0.5 * h * k1p);
    const double k3w = wp + 0.5 * h * k2p,
                 k3p = profile_rhs(pme, r + 0.5 * h, w + 0.5 * h * k2w,
                                   wp + 0.5 * h * k2p);
    const double k4w = wp + h * k3p,
                 k4p = profile_rhs(pme, r + h, w + h * k3w, wp + h * k3p);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    wp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    r += h;
    trace[i + 1] = w;
  }
  return trace;
}

}  // namespace detail

/// Max over interior grid points of the w-variable ODE residual
/// |w'' + ((n-1)/r) w' + w^{1/m}/(m-1)| with second-order differences.
/// A band near r = R is excluded: w is only C^2 at the zero boundary, so
/// centred differences of w'' lose accuracy there.
inline double profile_residual(const GiantProfile& p) {
  const size_t N = p.r_grid.size();
  if (N < 5)
    throw std::invalid_argument("profile_residual: need >= 5 grid points");
  const double r_cut = 0.95 * p.R;
  std::vector<double> w(N);
  for (size_t i = 0; i < N; ++i) w[i] = std::pow(p.U_values[i], p.pme.m);
  double worst = 0.0;
  for (size_t i = 1; i + 1 < N; ++i) {
    const double r = p.r_grid[i];
    if (r <= 0.0 || r > r_cut) continue;
    const double h0 = r - p.r_grid[i - 1];
    const double h1 = p.r_grid[i + 1] - r;
    const double wpp = 2.0 * (w[i - 1] / (h0 * (h0 + h1)) - w[i] / (h0 * h1) +
                              w[i + 1] / (h1 * (h0 + h1)));
    const double wp = (h0 * h0 * w[i + 1] - h1 * h1 * w[i - 1] +
                       (h1 * h1 - h0 * h0) * w[i]) /
                      (h0 * h1 * (h0 + h1));
    const double res = wpp + (p.pme.n - 1) / r * wp +
                       std::pow(std::max(w[i], 0.0), 1.0 / p.pme.m) /
                           (p.pme.m - 1.0);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

/// Radial shooting solve of the profile equation on [0, R]. The shooting
/// value w(0) is bracketed by a geometric scan (the first-zero radius is
/// monotone in w(0)) and refined by bisection until |U(R)| <= tol * U(0).
inline GiantProfile solve_profile(const PmeParams& pme, double R,
                                  double tol = 1e-8, int N = 4096,
                                  double w_seed = 1e-3) {
  if (!(R > 0.0) || !(tol > 0.0))
    throw std::invalid_argument("solve_profile: R > 0 and tol > 0 required");

  auto end_value = [&](double w0) {
    return detail::integrate_profile(pme, w0, R, N).back();
  };

  // geometric scan for a sign-change bracket of w(R)
  double lo = w_seed, hi = w_seed;
  int guard = 0;
  while (end_value(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 2000)
      throw std::runtime_error(
          "solve_profile: no shooting bracket found, scanned w0 up to " +
          std::to_string(hi));
  }
  guard = 0;
  while (end_value(lo) > 0.0) {
    lo *= 0.5;
    if (++guard > 2000)
      throw std::runtime_error(
          "solve_profile: no shooting bracket found, scanned w0 down to " +
          std::to_string(lo));
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (end_value(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
    if ((hi - lo) / hi < 1e-15) break;
  }
  const double w0 = 0.5 * (lo + hi);

  std::vector<double> w = detail::integrate_profile(pme, w0, R, N);
  const double U0 = std::pow(w0, 1.0 / pme.m);
  const double wend = std::max(w.back(), 0.0);
  if (std::pow(wend, 1.0 / pme.m) > tol * U0)
    throw std::runtime_error("solve_profile: boundary value not met");

  std::vector<double> r_grid(N + 1), U(N + 1);
  for (int i = 0; i <= N; ++i) {
    r_grid[i] = R * i / N;
    U[i] = std::pow(std::max(w[i], 0.0), 1.0 / pme.m);
  }
  U.back() = 0.0;

  GiantProfile p(pme, R, std::move(r_grid), std::move(U), w0, 0.0);
  p.residual_max = profile_residual(p);
  return p;
}

/// Exact group rescaling U_new(x) = (R_new/R)^{2/(m-1)} U(x R / R_new);
/// no new ODE solve.
inline GiantProfile rescale_profile(const GiantProfile& p, double R_new) {
  if (!(R_new > 0.0))
    throw std::invalid_argument("rescale_profile: R_new > 0 required");
  const double s = R_new / p.R;
  const double amp = std::pow(s, 2.0 / (p.pme.m - 1.0));
  std::vector<double> r(p.r_grid.size()), U(p.U_values.size());
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = p.r_grid[i] * s;
    U[i] = p.U_values[i] * amp;
  }
  r.back() = R_new;
  // the ODE residual scales by the same factor as U
  return GiantProfile(p.pme, R_new, std::move(r), std::move(U),
                      p.w0 * std::pow(amp, p.pme.m), p.residual_max * amp);
}

/// Friendly-giant evaluation U(x) (t - t0)^{-1/(m-1)}; identically zero for
/// t <= t0.
inline double giant_value(const GiantProfile& profile, double t0, double x,
                          double t) {
  if (t <= t0) return 0.0;
  return profile.value(x) * std::pow(t - t0, -1.0 / (profile.pme.m - 1.0));
}

/// Separable supersolution U(x) e^{f(t)/(m-1)} blowing up as fast as f allows.
struct FastBlowupParams {
  const GiantProfile* profile;
  std::function<double(double)> f;
};

/// Evaluates U(x) e^{f(t)/(m-1)}. Overflow saturates at the largest finite
/// double; `saturated` (when non-null) reports that the sentinel was hit.
inline double fast_blowup_value(const FastBlowupParams& fb, double x, double t,
                                bool* saturated = nullptr) {
  if (saturated) *saturated = false;
  if (!(t > 0.0))
    throw std::invalid_argument("fast_blowup_value: t > 0 required");
  const double U = fb.profile->value(x);
  if (U == 0.0) return 0.0;
  const double log_v =
      std::log(U) + fb.f(t) / (fb.profile->pme.m - 1.0);
  if (log_v >= std::log(std::numeric_limits<double>::max())) {
    if (saturated) *saturated = true;
    return std::numeric_limits<double>::max();
  }
  return std::exp(log_v);
}

/// Checks the supersolution condition f'(t) + e^{f(t)} >= 0 on a time grid.
/// The supplied derivative is first spot-checked against finite differences.
inline CheckReport fast_blowup_condition_check(
    const std::function<double(double)>& f,
    const std::function<double(double)>& f_prime,
    const std::vector<double>& t_grid, double tol = 1e-12) {
  if (t_grid.empty())
    throw std::invalid_argument("fast_blowup_condition_check: empty grid");
  for (size_t i = 0; i < t_grid.size(); i += std::max<size_t>(1, t_grid.size() / 8)) {
    const double t = t_grid[i];
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    const double fp = f_prime(t);
    const double scale = std::max({1.0, std::abs(fd), std::abs(fp)});
    if (std::abs(fd - fp) > 1e-4 * scale)
      throw std::invalid_argument(
          "fast_blowup_condition_check: derivative inconsistent with f");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (double t : t_grid)
    worst = std::min(worst, f_prime(t) + std::exp(f(t)));
  CheckReport rep;
  rep.name = "fast_blowup_condition";
  rep.lhs = worst;
  rep.rhs = 0.0;
  rep.fitted_constant = worst;
  rep.pass = worst >= -tol;
  return rep;
}

/// CSV export with header `r,U`, full double precision.
inline void write_profile_csv(const GiantProfile& p, std::ostream& os) {
  os << "r,U\n";
  char buf[80];
  for (size_t i = 0; i < p.r_grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.r_grid[i],
                  p.U_values[i]);
    os << buf;
  }
}

inline GiantProfile read_profile_csv(std::istream& is, const PmeParams& pme) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("r,U", 0) != 0)
    throw std::invalid_argument("profile CSV: missing 'r,U' header");
  std::vector<double> r, U;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("profile CSV: malformed row");
    r.push_back(std::stod(line.substr(0, comma)));
    U.push_back(std::stod(line.substr(comma + 1)));
  }
  if (r.size() < 2) throw std::invalid_argument("profile CSV: too few rows");
  const double w0 = std::pow(U.front(), pme.m);
  const double R = r.back();
  GiantProfile p(pme, R, std::move(r), std::move(U), w0, 0.0);
  p.residual_max = profile_residual(p);
  return p;
}

}  // namespace pmelab
