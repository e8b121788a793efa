#include <doctest.h>

#include <cmath>

#include "scq/errors.hpp"
#include "scq/scalar_ode.hpp"

using namespace scq;

TEST_CASE("zero initial value stays zero") {
  const CaputoRun r = solve_scalar_caputo(make_shifted_newton_gregory(2, -0.5, 0.1), -3.0, 0.0, 1.0, 40, {0.5, 1.0});
  for (double y : r.y) CHECK(y == 0.0);
}

TEST_CASE("lambda = 0 keeps the initial value") {
  const CaputoRun r = solve_scalar_caputo(make_bdf(2, -0.4), 0.0, 1.7, 1.0, 30);
  for (double y : r.y) CHECK(y == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("errors shrink under refinement") {
  const double a = 0.5;
  const GeneratingFunction gf = make_shifted_newton_gregory(2, -a, 0.2);
  double prev = 0.0;
  for (std::size_t n : {40u, 80u, 160u}) {
    const CaputoRun r = solve_scalar_caputo(gf, -1.0, 1.0, 1.0, n, {a, 2 * a, 3 * a});
    const double e = max_error_vs_reference(r, a, -1.0, 1.0);
    if (prev > 0.0) CHECK(std::log2(prev / e) > 1.5);
    prev = e;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(solve_scalar_caputo(make_bdf(1, 0.5), -1.0, 1.0, 1.0, 10), ConstraintError);
  CHECK_THROWS_AS(solve_scalar_caputo(make_bdf(1, -0.5), -1.0, 1.0, 1.0, 0), ConstraintError);
  CHECK_THROWS_AS(solve_scalar_caputo(make_bdf(1, -0.5), -1.0, 1.0, 1.0, 1, {0.5, 1.0}), ConstraintError);
}
