#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmelab/solver.hpp"

namespace pmelab {

namespace detail {

inline std::vector<const Field*> snapshots_after(const Trajectory& traj,
                                                 double t0) {
  std::vector<const Field*> out;
  for (const Field& f : traj.snapshots)
    if (f.time > t0) out.push_back(&f);
  std::sort(out.begin(), out.end(),
            [](const Field* a, const Field* b) { return a->time < b->time; });
  return out;
}

// default schedule: threshold j (0-based, increasing) is tested on the
// first s(j) = S - j snapshots after t0, so higher thresholds get
// shorter time windows
inline std::vector<int> default_schedule(size_t n_thresholds,
                                         size_t n_snapshots) {
  std::vector<int> s(n_thresholds);
  for (size_t j = 0; j < n_thresholds; ++j)
    s[j] = static_cast<int>(n_snapshots - j);
  return s;
}

inline void check_schedule(const std::vector<double>& thresholds,
                           const std::vector<int>& schedule,
                           size_t n_snapshots) {
  if (thresholds.empty())
    throw std::invalid_argument("infinity set: empty threshold list");
  for (size_t j = 1; j < thresholds.size(); ++j)
    if (!(thresholds[j] > thresholds[j - 1]))
      throw std::invalid_argument("infinity set: thresholds must increase");
  if (schedule.size() != thresholds.size())
    throw std::invalid_argument("infinity set: schedule length mismatch");
  for (size_t j = 0; j < schedule.size(); ++j) {
    if (schedule[j] < 1 || static_cast<size_t>(schedule[j]) > n_snapshots)
      throw std::runtime_error(
          "infinity set: insufficient snapshots near t0 for the schedule");
    if (j > 0 && schedule[j] > schedule[j - 1])
      throw std::invalid_argument(
          "infinity set: schedule must be nonincreasing");
  }
}

}  // namespace detail

/// Cells x where u(x, .) stays above every threshold on a shrinking time
/// window just after t0: threshold k must be cleared by the minimum over
/// the first s(k) snapshots after t0 (s = schedule; default S - j).
inline std::vector<int> infinity_set_vertical(
    const Trajectory& traj, double t0, const std::vector<double>& thresholds,
    std::vector<int> schedule = {}) {
  auto snaps = detail::snapshots_after(traj, t0);
  if (snaps.size() < thresholds.size())
    throw std::runtime_error("infinity_set_vertical: insufficient snapshots");
  if (schedule.empty())
    schedule = detail::default_schedule(thresholds.size(), snaps.size());
  detail::check_schedule(thresholds, schedule, snaps.size());
  const int N = snaps.front()->grid.N;
  std::vector<int> cells;
  for (int i = 0; i < N; ++i) {
    bool ok = true;
    for (size_t j = 0; ok && j < thresholds.size(); ++j) {
      double lo = snaps[0]->values[i];
      for (int s = 1; s < schedule[j]; ++s)
        lo = std::min(lo, snaps[s]->values[i]);
      ok = lo > thresholds[j];
    }
    if (ok) cells.push_back(i);
  }
  return cells;
}

/// Like the vertical variant, but each threshold's minimum runs over a
/// shrinking space-time neighborhood: the same snapshot prefix crossed
/// with cells within max(delta_k, 1.5 h) of x, where delta_k is the time
/// extent of the prefix. The spatial floor of 1.5 h keeps the neighborhood
/// genuinely two-dimensional on a grid (at least the adjacent cells).
inline std::vector<int> infinity_set_full(
    const Trajectory& traj, double t0, const std::vector<double>& thresholds,
    std::vector<int> schedule = {}) {
  auto snaps = detail::snapshots_after(traj, t0);
  if (snaps.size() < thresholds.size())
    throw std::runtime_error("infinity_set_full: insufficient snapshots");
  if (schedule.empty())
    schedule = detail::default_schedule(thresholds.size(), snaps.size());
  detail::check_schedule(thresholds, schedule, snaps.size());
  const Grid1D& grid = snaps.front()->grid;
  const double h = grid.h();
  std::vector<int> cells;
  for (int i = 0; i < grid.N; ++i) {
    bool ok = true;
    for (size_t j = 0; ok && j < thresholds.size(); ++j) {
      const double delta = snaps[schedule[j] - 1]->time - t0;
      const double radius = std::max(delta, 1.5 * h);
      const int reach = static_cast<int>(radius / h);
      double lo = std::numeric_limits<double>::infinity();
      for (int di = -reach; di <= reach; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= grid.N) continue;
        for (int s = 0; s < schedule[j]; ++s)
          lo = std::min(lo, snaps[s]->values[ii]);
      }
      ok = lo > thresholds[j];
    }
    if (ok) cells.push_back(i);
  }
  return cells;
}

}  // namespace pmelab
