#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pmelab/profile.hpp"
#include "pmelab/residual.hpp"

using namespace pmelab;

TEST_CASE("shooting solve reproduces the frozen central values") {
  const GiantProfile p1 = solve_profile(PmeParams(2.0, 1), 1.0);
  CHECK(p1.U_values.front() ==
        doctest::Approx(0.44822039438837485).epsilon(1e-8));
  CHECK(p1.w0 == doctest::Approx(0.2009015219456703).epsilon(1e-8));
  CHECK(p1.U_values.back() == 0.0);

  const GiantProfile p2 = solve_profile(PmeParams(2.0, 2), 1.0);
  CHECK(p2.U_values.front() ==
        doctest::Approx(0.20856708025281526).epsilon(1e-8));
}

TEST_CASE("profile residual small on the interior") {
  const GiantProfile p = solve_profile(PmeParams(2.0, 1), 1.0, 1e-8, 2000);
  CHECK(p.residual_max <= 1e-6);
}

TEST_CASE("rescaling identity: doubling R scales U(0) by 2^{2/(m-1)}") {
  const GiantProfile p1 = solve_profile(PmeParams(2.0, 1), 1.0);
  const GiantProfile p2 = rescale_profile(p1, 2.0);
  CHECK(p2.U_values.front() / p1.U_values.front() ==
        doctest::Approx(4.0).epsilon(1e-10));
  CHECK(p2.R == doctest::Approx(2.0));
  // against an independent solve
  const GiantProfile direct = solve_profile(PmeParams(2.0, 1), 2.0);
  CHECK(direct.U_values.front() ==
        doctest::Approx(p2.U_values.front()).epsilon(1e-7));
}

TEST_CASE("giant field satisfies the PME pointwise") {
  const GiantProfile p = solve_profile(PmeParams(2.0, 1), 1.0);
  auto u = [&](double r, double t) { return giant_value(p, 0.0, r, t); };
  for (double x : {0.2, 0.5, 0.7}) {
    const double res = pme_residual_pointwise(u, p.pme, x, 0.5, 1e-3);
    CHECK(std::abs(res) < 1e-3);
  }
  CHECK(giant_value(p, 0.0, 0.3, -0.1) == 0.0);
  CHECK(giant_value(p, 0.0, 0.3, 0.0) == 0.0);
  // separable scaling in time
  CHECK(u(0.3, 0.25) == doctest::Approx(2.0 * u(0.3, 0.5)));
}

TEST_CASE("fast blow-up condition for f = 1/t") {
  std::vector<double> grid;
  for (int i = 0; i <= 500; ++i)
    grid.push_back(0.01 * std::pow(1000.0, i / 500.0));
  const CheckReport rep = fast_blowup_condition_check(
      [](double t) { return 1.0 / t; },
      [](double t) { return -1.0 / (t * t); }, grid);
  CHECK(rep.pass);
  CHECK(rep.lhs >= 0.0);
}

TEST_CASE("fast blow-up value saturates instead of overflowing") {
  const GiantProfile p = solve_profile(PmeParams(2.0, 1), 1.0);
  FastBlowupParams fb{&p, [](double t) { return 1.0 / t; }};
  bool sat = false;
  const double v = fast_blowup_value(fb, 0.2, 1e-4, &sat);
  CHECK(sat);
  CHECK(v == std::numeric_limits<double>::max());
  sat = true;
  const double w = fast_blowup_value(fb, 0.2, 1.0, &sat);
  CHECK_FALSE(sat);
  CHECK(w == doctest::Approx(p.value(0.2) * std::exp(1.0)));
}

TEST_CASE("inconsistent derivative is rejected") {
  std::vector<double> grid = {0.1, 0.5, 1.0, 2.0, 5.0};
  CHECK_THROWS_AS(
      fast_blowup_condition_check([](double t) { return 1.0 / t; },
                                  [](double t) { return 1.0 / t; }, grid),
      std::invalid_argument);
}

TEST_CASE("profile CSV round trip") {
  const GiantProfile p = solve_profile(PmeParams(2.0, 1), 1.0, 1e-8, 512);
  std::stringstream ss;
  write_profile_csv(p, ss);
  const GiantProfile q = read_profile_csv(ss, p.pme);
  CHECK(q.r_grid.size() == p.r_grid.size());
  CHECK(q.U_values.front() == doctest::Approx(p.U_values.front()));
  CHECK(q.value(0.5) == doctest::Approx(p.value(0.5)).epsilon(1e-12));
}

TEST_CASE("validation rejects malformed profiles") {
  const PmeParams pme(2.0, 1);
  CHECK_THROWS_AS(GiantProfile(pme, 1.0, {0.0, 0.5, 1.0}, {0.0, 0.3, 0.0},
                               0.0, 0.0),
                  std::invalid_argument);  // U(0) not positive
  CHECK_THROWS_AS(GiantProfile(pme, 1.0, {0.0, 0.5, 1.0}, {0.4, 0.3, 0.2},
                               0.16, 0.0),
                  std::invalid_argument);  // U(R) not zero
}
