#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pmelab/field.hpp"
#include "pmelab/mesh.hpp"

namespace pmelab {

struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { Finite, Divergent, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "FINITE";
    case Verdict::Divergent: return "DIVERGENT";
    default: return "INCONCLUSIVE";
  }
}

/// Sequence of quadrature values under mesh refinement, plus the verdict.
/// A trend is FINITE when the last two levels agree to 5%, DIVERGENT when
/// the values increase monotonically with a fitted log-log growth exponent
/// above 0.2, and INCONCLUSIVE otherwise.
struct RefinementTrend {
  std::vector<std::pair<double, double>> levels;  // (resolution, value)
  Verdict verdict = Verdict::Inconclusive;
  double growth_exponent = 0.0;

  nlohmann::json to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (auto& [res, val] : levels) lv.push_back({{"resolution", res}, {"value", val}});
    return {{"schema", 1},
            {"levels", lv},
            {"verdict", to_string(verdict)},
            {"growth_exponent", growth_exponent}};
  }
};

/// Axis-aligned region [0, r_max] x [t_lo, t_hi]. Quadratures grade toward
/// r = 0 and toward the singular time slice (t_lo when the singular time
/// lies outside the interval).
struct SpaceTimeBox {
  double r_max;
  double t_lo, t_hi;
};

struct TrendConfig {
  int base_resolution = 64;
  int levels = 3;
  double time_grading = 8.0;
  double space_grading = 3.0;
};

namespace detail {

inline void finalize_trend(RefinementTrend& trend) {
  const size_t L = trend.levels.size();
  if (L < 3) throw std::invalid_argument("refinement trend: levels >= 3");
  for (auto& [res, val] : trend.levels)
    if (!std::isfinite(val)) {
      trend.verdict = Verdict::Divergent;
      trend.growth_exponent = std::numeric_limits<double>::infinity();
      return;
    }
  // least-squares slope of log(value) against log(resolution)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  bool positive = true;
  for (auto& [res, val] : trend.levels) positive = positive && val > 0.0;
  if (positive) {
    for (auto& [res, val] : trend.levels) {
      const double x = std::log(res), y = std::log(val);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++count;
    }
    trend.growth_exponent =
        (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  const double last = trend.levels[L - 1].second;
  const double prev = trend.levels[L - 2].second;
  bool monotone_up = true;
  for (size_t k = 1; k < L; ++k)
    monotone_up = monotone_up &&
                  trend.levels[k].second >= trend.levels[k - 1].second;
  const double rel_change =
      std::abs(last - prev) / std::max(std::abs(prev), 1e-300);
  if (rel_change < 0.05)
    trend.verdict = Verdict::Finite;
  else if (positive && monotone_up && trend.growth_exponent > 0.2)
    trend.verdict = Verdict::Divergent;
  else
    trend.verdict = Verdict::Inconclusive;
}

// Meshes covering the box at resolution J. When the field's singular time
// falls strictly inside the time interval, the box is split there and both
// parts are graded toward the singular slice.
inline std::vector<TensorMesh> box_meshes(const SpaceTimeField& field,
                                          const SpaceTimeBox& box, int J,
                                          double gamma, double kappa) {
  const double ts = field.singular_time;
  std::vector<TensorMesh> out;
  if (ts > box.t_lo && ts < box.t_hi) {
    out.push_back(
        make_graded_mesh(field.pme.n, box.r_max, ts, box.t_hi, J, J, gamma,
                         kappa));
    out.push_back(
        make_graded_mesh(field.pme.n, box.r_max, box.t_lo, ts, J, J, gamma,
                         kappa, /*grade_toward_hi=*/true));
  } else {
    out.push_back(make_graded_mesh(field.pme.n, box.r_max, box.t_lo, box.t_hi,
                                   J, J, gamma, kappa));
  }
  return out;
}

}  // namespace detail

/// Trend of integral of |u|^q over the box under simultaneous space-time
/// mesh doubling.
inline RefinementTrend lq_spacetime_trend(const SpaceTimeField& field,
                                          const SpaceTimeBox& box, double q,
                                          const TrendConfig& cfg = {}) {
  if (!(q > 0.0)) throw std::invalid_argument("lq_spacetime_trend: q > 0");
  if (!(box.t_hi > box.t_lo) || !(box.r_max > 0.0))
    throw std::invalid_argument("lq_spacetime_trend: degenerate box");
  RefinementTrend trend;
  int J = cfg.base_resolution;
  for (int level = 0; level < cfg.levels; ++level, J *= 2) {
    double total = 0.0;
    for (const TensorMesh& mesh : detail::box_meshes(
             field, box, J, cfg.time_grading, cfg.space_grading)) {
      for (size_t j = 0; j < mesh.t_mid.size(); ++j) {
        double row = 0.0;
        for (size_t i = 0; i < mesh.r_mid.size(); ++i)
          row += mesh.r_w[i] *
                 std::pow(std::abs(field.eval(mesh.r_mid[i], mesh.t_mid[j])),
                          q);
        total += mesh.t_w[j] * row;
      }
    }
    trend.levels.push_back({double(J), total});
  }
  detail::finalize_trend(trend);
  return trend;
}

/// Trend of integral of |grad(u^m)|^q over the box.
inline RefinementTrend gradient_lq_trend(const SpaceTimeField& field,
                                         const SpaceTimeBox& box, double q,
                                         const TrendConfig& cfg = {}) {
  if (!(q > 0.0)) throw std::invalid_argument("gradient_lq_trend: q > 0");
  RefinementTrend trend;
  int J = cfg.base_resolution;
  for (int level = 0; level < cfg.levels; ++level, J *= 2) {
    const double h_fd = box.r_max / (8.0 * J);
    double total = 0.0;
    for (const TensorMesh& mesh : detail::box_meshes(
             field, box, J, cfg.time_grading, cfg.space_grading)) {
      for (size_t j = 0; j < mesh.t_mid.size(); ++j) {
        double row = 0.0;
        for (size_t i = 0; i < mesh.r_mid.size(); ++i)
          row += mesh.r_w[i] *
                 std::pow(std::abs(field.grad_um_or_fd(mesh.r_mid[i],
                                                       mesh.t_mid[j], h_fd)),
                          q);
        total += mesh.t_w[j] * row;
      }
    }
    trend.levels.push_back({double(J), total});
  }
  detail::finalize_trend(trend);
  return trend;
}

/// Trend of sup over sampled times of the slice integral of u over
/// B(0, sub_radius), with the left endpoint of the window shrinking
/// geometrically toward t_left_limit across levels:
/// level k samples (t_left_limit + delta0 / 2^k, t_right).
inline RefinementTrend slice_sup_trend(const SpaceTimeField& field,
                                       double sub_radius, double t_left_limit,
                                       double delta0, double t_right,
                                       int levels = 4,
                                       int time_samples = 64,
                                       int space_cells = 512) {
  if (!(delta0 > 0.0) || !(t_right > t_left_limit + delta0))
    throw std::invalid_argument("slice_sup_trend: bad window");
  RefinementTrend trend;
  const double omega = unit_sphere_area(field.pme.n);
  double delta = delta0;
  for (int level = 0; level < levels; ++level, delta *= 0.5) {
    double sup = 0.0;
    for (int j = 0; j < time_samples; ++j) {
      // geometric time samples accumulating at the left endpoint
      const double frac = std::pow(
          delta / (t_right - t_left_limit), double(j) / (time_samples - 1));
      const double t = t_left_limit + (t_right - t_left_limit) * frac;
      double slice = 0.0;
      const double dr = sub_radius / space_cells;
      for (int i = 0; i < space_cells; ++i) {
        const double r = (i + 0.5) * dr;
        slice += omega * std::pow(r, field.pme.n - 1) * dr * field.eval(r, t);
      }
      sup = std::max(sup, slice);
    }
    trend.levels.push_back({1.0 / delta, sup});
  }
  detail::finalize_trend(trend);
  return trend;
}

enum class ClassLabel { ClassB, ClassM, Bounded };

inline std::string to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::ClassB: return "CLASS_B";
    case ClassLabel::ClassM: return "CLASS_M";
    default: return "BOUNDED";
  }
}

struct Classification {
  ClassLabel label;
  RefinementTrend evidence;   // trend at q = m - 1 (empty when BOUNDED)
  double sup_first = 0.0;     // max sampled value at the coarsest level
  double sup_last = 0.0;      // max sampled value at the finest level

  nlohmann::json to_json() const {
    return {{"schema", 1},
            {"label", to_string(label)},
            {"sup_first", sup_first},
            {"sup_last", sup_last},
            {"evidence", evidence.to_json()}};
  }
};

/// Trichotomy for a nonnegative field on the box: BOUNDED when the sampled
/// sup stays stable under refinement; otherwise the trend of the integral
/// of u^{m-1} separates bounded-integral (CLASS_B) from divergent
/// (CLASS_M) behaviour. INCONCLUSIVE trends propagate as an error.
///
/// The q = m-1 integral of a genuinely unbounded-but-integrable field can
/// diverge only logarithmically, so the trend here deliberately uses a
/// coarse base mesh with mild grading, where a logarithmic drift still
/// registers as monotone growth above the slope threshold.
inline Classification classify(const SpaceTimeField& field,
                               const SpaceTimeBox& box) {
  const PmeParams& pme = field.pme;
  Classification out;

  // sampled sup under refinement
  std::vector<double> sups;
  int J = 32;
  for (int level = 0; level < 3; ++level, J *= 2) {
    const TensorMesh mesh = make_graded_mesh(pme.n, box.r_max, box.t_lo,
                                             box.t_hi, J, J, 8.0, 3.0);
    double sup = 0.0;
    for (size_t j = 0; j < mesh.t_mid.size(); ++j)
      for (size_t i = 0; i < mesh.r_mid.size(); ++i)
        sup = std::max(sup, field.eval(mesh.r_mid[i], mesh.t_mid[j]));
    sups.push_back(sup);
  }
  out.sup_first = sups.front();
  out.sup_last = sups.back();
  if (out.sup_last <= out.sup_first * 1.5) {
    out.label = ClassLabel::Bounded;
    return out;
  }

  TrendConfig coarse;
  coarse.base_resolution = 8;
  coarse.levels = 3;
  coarse.time_grading = 3.0;
  coarse.space_grading = 2.0;
  out.evidence = lq_spacetime_trend(field, box, pme.m - 1.0, coarse);
  if (out.evidence.verdict == Verdict::Finite)
    out.label = ClassLabel::ClassB;
  else if (out.evidence.verdict == Verdict::Divergent)
    out.label = ClassLabel::ClassM;
  else
    throw InconclusiveError("classify: refinement trend inconclusive");
  return out;
}

}  // namespace pmelab
