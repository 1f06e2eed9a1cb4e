#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmelab/barenblatt.hpp"
#include "pmelab/residual.hpp"

using namespace pmelab;

TEST_CASE("lambda exponent") {
  CHECK(barenblatt_lambda(PmeParams(2.0, 1)) == doctest::Approx(1.0 / 3.0));
  CHECK(barenblatt_lambda(PmeParams(2.0, 2)) == doctest::Approx(0.5));
  CHECK(barenblatt_lambda(PmeParams(3.0, 2)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("vanishes for t <= t_shift and outside the support") {
  const BarenblattParams bp(PmeParams(2.0, 1), 1.0);
  CHECK(barenblatt_value(bp, 0.3, 0.0) == 0.0);
  CHECK(barenblatt_value(bp, 0.3, -1.0) == 0.0);
  const double rad = barenblatt_support_radius(bp, 1.0);
  CHECK(barenblatt_value(bp, rad * 1.01, 1.0) == 0.0);
  CHECK(barenblatt_value(bp, rad * 0.99, 1.0) > 0.0);
  CHECK_THROWS_AS(barenblatt_support_radius(bp, 0.0), std::invalid_argument);
}

TEST_CASE("central value and support radius, m=2 n=1 C=1") {
  const BarenblattParams bp(PmeParams(2.0, 1), 1.0);
  // u(0, t) = t^{-1/3} C^{1/(m-1)}
  CHECK(barenblatt_value(bp, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(barenblatt_value(bp, 0.0, 8.0) == doctest::Approx(0.5));
  // bracket coefficient 1/12, support radius sqrt(12 C) t^{1/3}
  CHECK(bp.bracket_coeff() == doctest::Approx(1.0 / 12.0));
  CHECK(barenblatt_support_radius(bp, 1.0) ==
        doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("mass is conserved and matches the frozen value") {
  const BarenblattParams bp(PmeParams(2.0, 1), 1.0);
  const double m1 = barenblatt_mass(bp, 1.0);
  CHECK(m1 == doctest::Approx(4.618802153517006).epsilon(1e-12));
  CHECK(barenblatt_mass(bp, 0.25) == doctest::Approx(m1).epsilon(1e-10));
  CHECK(barenblatt_mass(bp, 3.0) == doctest::Approx(m1).epsilon(1e-10));
}

TEST_CASE("mass scales as C^{1/(m-1) + n/2}") {
  for (auto [m, n] : {std::pair{2.0, 1}, {2.0, 2}, {3.0, 2}}) {
    const PmeParams pme(m, n);
    const double mass1 = barenblatt_mass(BarenblattParams(pme, 1.0), 1.0);
    const double mass2 = barenblatt_mass(BarenblattParams(pme, 2.0), 1.0);
    const double expo = 1.0 / (m - 1.0) + 0.5 * n;
    CHECK(mass2 / mass1 == doctest::Approx(std::pow(2.0, expo)).epsilon(1e-9));
  }
}

TEST_CASE("gradients agree with finite differences") {
  const BarenblattParams bp(PmeParams(2.0, 2), 1.5);
  const double t = 0.7, h = 1e-6;
  for (double x : {0.2, 0.5, 0.9}) {
    const double fd_um = (std::pow(barenblatt_value(bp, x + h, t), 2.0) -
                          std::pow(barenblatt_value(bp, x - h, t), 2.0)) /
                         (2.0 * h);
    CHECK(barenblatt_grad_um(bp, x, t) == doctest::Approx(fd_um).epsilon(1e-6));
    const double fd_u = (barenblatt_value(bp, x + h, t) -
                         barenblatt_value(bp, x - h, t)) /
                        (2.0 * h);
    CHECK(barenblatt_grad_u(bp, x, t) == doctest::Approx(fd_u).epsilon(1e-6));
  }
}

TEST_CASE("pointwise residual vanishes at second order") {
  const BarenblattParams bp(PmeParams(2.0, 1), 1.0);
  auto u = [&](double r, double t) { return barenblatt_value(bp, r, t); };
  // interior points away from origin and free boundary
  const double t = 1.0;
  for (double x : {0.5, 1.2, 2.0}) {
    const double r1 = pme_residual_pointwise(u, bp.pme, x, t, 1e-2);
    const double r2 = pme_residual_pointwise(u, bp.pme, x, t, 5e-3);
    CHECK(std::abs(r1) < 1e-3);
    const double ratio = std::abs(r1) / std::max(std::abs(r2), 1e-16);
    CHECK(ratio > 3.0);  // roughly order 2
    CHECK(ratio < 6.0);
  }
}

TEST_CASE("time shift and center move the solution rigidly") {
  const PmeParams pme(2.0, 1);
  const BarenblattParams base(pme, 1.0);
  const BarenblattParams moved(pme, 1.0, 0.25, 1.5);
  CHECK(barenblatt_value(moved, 1.5 + 0.3, 1.25) ==
        doctest::Approx(barenblatt_value(base, 0.3, 1.0)));
}
