#pragma once

#include <cmath>
#include <vector>

#include "pmelab/common.hpp"

namespace pmelab {

/// Tensor-product midpoint mesh on [0, X] x [t_lo, t_hi]. Cells are graded
/// toward t_lo (power `gamma`) and toward r = 0 (power `kappa`) so that
/// integrands singular at the lower-left corner are resolved. r-weights
/// include the radial surface measure omega_{n-1} r^{n-1}.
struct TensorMesh {
  std::vector<double> t_mid, t_w;
  std::vector<double> r_mid, r_w;
};

inline TensorMesh make_graded_mesh(int n, double X, double t_lo, double t_hi,
                                   int time_cells, int space_cells,
                                   double gamma = 8.0, double kappa = 3.0,
                                   bool grade_toward_hi = false) {
  TensorMesh mesh;
  mesh.t_mid.resize(time_cells);
  mesh.t_w.resize(time_cells);
  const double T = t_hi - t_lo;
  for (int j = 0; j < time_cells; ++j) {
    double a, b;
    if (grade_toward_hi) {
      a = t_hi - T * std::pow(double(j + 1) / time_cells, gamma);
      b = t_hi - T * std::pow(double(j) / time_cells, gamma);
    } else {
      a = t_lo + T * std::pow(double(j) / time_cells, gamma);
      b = t_lo + T * std::pow(double(j + 1) / time_cells, gamma);
    }
    mesh.t_mid[j] = 0.5 * (a + b);
    mesh.t_w[j] = b - a;
  }
  mesh.r_mid.resize(space_cells);
  mesh.r_w.resize(space_cells);
  const double omega = unit_sphere_area(n);
  for (int i = 0; i < space_cells; ++i) {
    const double a = X * std::pow(double(i) / space_cells, kappa);
    const double b = X * std::pow(double(i + 1) / space_cells, kappa);
    const double rm = 0.5 * (a + b);
    mesh.r_mid[i] = rm;
    mesh.r_w[i] = omega * std::pow(rm, n - 1) * (b - a);
  }
  return mesh;
}

}  // namespace pmelab
