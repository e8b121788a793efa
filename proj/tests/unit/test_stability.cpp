#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gen.hpp"
#include "scq/errors.hpp"
#include "scq/stability.hpp"

using namespace scq;

namespace {

constexpr double kPi = std::numbers::pi;

// Even-odd rule against the closed polygon through the samples.
bool inside_polygon(const std::vector<cplx>& poly, cplx z) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const cplx a = poly[i], b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

double distance_to(const std::vector<cplx>& pts, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& p : pts) d = std::min(d, std::abs(p - z));
  return d;
}

}  // namespace

TEST_CASE("scheme pairing") {
  CHECK_NOTHROW(make_scheme(Scheme::I, make_bdf(1, -0.5)));
  CHECK_THROWS_AS(make_scheme(Scheme::I, make_bdf(1, 0.5)), ConstraintError);
  CHECK_THROWS_AS(make_scheme(Scheme::II, make_bdf(1, -0.5)), ConstraintError);
  const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.3));
  CHECK(s.alpha == 0.5);
  CHECK(s.tw.w[1] == doctest::Approx(0.3));
}

TEST_CASE("boundary locus") {
  const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.0));
  const StabilityLocus loc = boundary_locus(s, 1024);
  REQUIRE(loc.samples.size() == 1024);
  CHECK(loc.radius == 1.0 - 1e-6);
  // theta = 0: the locus is the image of omega.
  for (std::size_t k = 0; k < 1024; k += 97) {
    const cplx xi = std::polar(loc.radius, 2.0 * kPi * k / 1024.0);
    CHECK(std::abs(loc.samples[k] - s.gf.evaluate(xi)) < 1e-14);
  }
  // xi -> 1 takes Scheme I to the origin.
  CHECK(std::abs(loc.samples[0]) < 2e-3);
  // Scheme II trapezoid: unbounded branch at xi = -1.
  const SchemeSpec t = make_scheme(Scheme::II, make_trapezoidal(0.5));
  const StabilityLocus lt = boundary_locus(t, 1024);
  CHECK(std::abs(lt.samples[512]) > 100.0);
  CHECK_THROWS_AS(boundary_locus(s, 100), ConstraintError);
}

TEST_CASE("property: locus does not depend on the sample count") {
  for (double th : {0.0, 0.3}) {
    const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, th));
    const StabilityLocus a = boundary_locus(s, 4096);
    const StabilityLocus b = boundary_locus(s, 8192);
    double same = 0.0, worst = 0.0;
    for (std::size_t k = 0; k < 4096; ++k) {
      same = std::max(same, std::abs(a.samples[k] - b.samples[2 * k]));
      // The two arcs touching the branch point at xi = 1 follow a
      // square-root cusp that no chord resolves.
      if (k == 0 || k == 4095) continue;
      // Odd samples of the finer curve against the chord of the coarse one,
      // relative to the size of the curve there.
      const cplx p = a.samples[k], q = a.samples[(k + 1) % 4096], m = b.samples[2 * k + 1];
      const double len = std::abs(q - p);
      const double d = len > 0 ? std::abs(((m - p) * std::conj(q - p)).imag()) / len : std::abs(m - p);
      worst = std::max(worst, d / std::max(1.0, std::abs(m)));
    }
    CHECK(same < 1e-12);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("membership examples") {
  const SchemeSpec s0 = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.0));
  const RegionResult origin = in_region(s0, 0.0);
  CHECK(origin.in_region);
  CHECK(origin.boundary_adjacent);
  CHECK(in_region(s0, -1e6).in_region);
  CHECK_FALSE(in_region(s0, 1.0).in_region);
  const SchemeSpec cd = make_scheme(Scheme::I, make_central_difference(-0.8));
  CHECK_FALSE(in_region(cd, -0.01).in_region);
  CHECK_THROWS_AS(in_region(s0, cplx(std::nan(""), 0.0)), ConstraintError);
}

TEST_CASE("A(delta) classification") {
  const double a = 0.5;
  CHECK(a_delta_classify(make_scheme(Scheme::II, make_shifted_newton_gregory(2, a, 0.2)), kPi / 2).stable);
  CHECK_FALSE(a_delta_classify(make_scheme(Scheme::I, make_wsgl(1, -2, -a)), kPi / 2).stable);
  CHECK(a_delta_classify(make_scheme(Scheme::II, make_central_difference(a)), kPi / 2).stable);
  const SchemeSpec s = make_scheme(Scheme::I, make_bdf(1, -a));
  CHECK_THROWS_AS(a_delta_classify(s, 0.0), ConstraintError);
  CHECK_THROWS_AS(a_delta_classify(s, kPi), ConstraintError);
}

TEST_CASE("stable interval") {
  CHECK(std::isinf(max_stable_interval(make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.0)))));
  CHECK(max_stable_interval(make_scheme(Scheme::I, make_central_difference(-0.8))) == 0.0);
  const double x0 =
      max_stable_interval(make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.6, true)));
  CHECK(x0 > 0.0);
  CHECK(std::isfinite(x0));
}

TEST_CASE("scalar recursion") {
  SUBCASE("integer order tracks implicit euler") {
    const SchemeSpec s = make_scheme(Scheme::I, make_bdf(1, -1.0));
    double prev = 0.0;
    for (std::size_t n : {50u, 100u, 200u}) {
      const double h = 1.0 / n;
      const RecursionResult r = scalar_recursion_run(s, -1.0, 1.0, h, n);
      const double err = std::fabs(r.y.back() - std::exp(-1.0));
      if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.05));
      prev = err;
    }
  }
  SUBCASE("central difference blows up") {
    const SchemeSpec s = make_scheme(Scheme::I, make_central_difference(-0.8));
    const RecursionResult r = scalar_recursion_run(s, -15.0, 1.0, 0.2, 200);
    CHECK(r.diverged);
  }
  SUBCASE("inside the region the solution decays") {
    const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.0));
    const RecursionResult r = scalar_recursion_run(s, -2.0, 1.0, 0.1, 500);
    CHECK_FALSE(r.diverged);
    CHECK(std::fabs(r.y.back()) < 0.1);
  }
  const SchemeSpec s = make_scheme(Scheme::I, make_bdf(1, -0.5));
  CHECK_THROWS_AS(scalar_recursion_run(s, -1.0, 1.0, 0.1, 0), ConstraintError);
  CHECK_THROWS_AS(scalar_recursion_run(s, -1.0, 1.0, 0.0, 5), ConstraintError);
}

TEST_CASE("reference solution") {
  CHECK(reference_solution(0.5, -1.0, 2.0, 0.0) == 2.0);
  CHECK(reference_solution(1.0, -0.7, 1.5, 2.0) == doctest::Approx(1.5 * std::exp(-1.4)).epsilon(1e-13));
  CHECK(reference_solution(0.5, -1.0, 1.0, 1.0) == doctest::Approx(0.4275835761558070).epsilon(1e-14));
}

TEST_CASE("property: membership agrees with point in polygon") {
  Gen g(17);
  for (double th : {0.0, 0.3}) {
    const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, th));
    const StabilityLocus loc = boundary_locus(s, 4096);
    double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
    for (const cplx& z : loc.samples) {
      re_lo = std::min(re_lo, z.real());
      re_hi = std::max(re_hi, z.real());
      im_lo = std::min(im_lo, z.imag());
      im_hi = std::max(im_hi, z.imag());
    }
    const RegionTester tester(s);
    int tested = 0;
    while (tested < 200) {
      const cplx z(g.uniform(re_lo - 0.5, re_hi + 0.5), g.uniform(im_lo - 0.5, im_hi + 0.5));
      if (distance_to(loc.samples, z) <= 1e-2) continue;
      ++tested;
      CHECK(tester.test(z).in_region == !inside_polygon(loc.samples, z));
    }
  }
}

TEST_CASE("property: decay inside, no decay outside") {
  Gen g(19);
  const SchemeSpec s = make_scheme(Scheme::I, make_shifted_newton_gregory(2, -0.5, 0.6, true));
  const RegionTester tester(s);
  const StabilityLocus loc = boundary_locus(s, 4096);
  int inside = 0, outside = 0, agree_in = 0, agree_out = 0;
  const std::size_t n = 2000;
  while (inside < 50 || outside < 50) {
    const cplx z(g.uniform(-4.0, 3.0), g.uniform(-3.0, 3.0));
    if (distance_to(loc.samples, z) <= 5e-2) continue;
    const RegionResult r = tester.test(z);
    if (r.inconclusive) continue;
    if (r.in_region && inside < 50) {
      ++inside;
      const auto y = recursion_run(s, z, 1.0, n);
      if (y.size() == n + 1 && std::abs(y.back()) < 1.0) ++agree_in;
    } else if (!r.in_region && outside < 50) {
      ++outside;
      const auto y = recursion_run(s, z, 1.0, n);
      if (y.size() < n + 1 || std::abs(y.back()) > 1e-6) ++agree_out;
    }
  }
  CHECK(agree_in >= 48);
  CHECK(agree_out >= 48);
}
