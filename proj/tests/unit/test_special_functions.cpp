#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "scq/errors.hpp"
#include "scq/special_functions.hpp"

using scq::mittag_leffler;

TEST_CASE("gamma at classical points") {
  CHECK(scq::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(scq::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  // Gamma(4.5) built up from Gamma(0.5) by x Gamma(x).
  double g = std::sqrt(std::numbers::pi);
  for (double x = 0.5; x < 4.0; x += 1.0) g *= x;
  CHECK(scq::gamma(4.5) == doctest::Approx(g).epsilon(1e-13));
  CHECK(scq::gamma(4.5) == doctest::Approx(11.631728396567448).epsilon(1e-13));
}

TEST_CASE("gamma recurrence and reflection on a grid") {
  for (double x = -9.75; x <= 49.0; x += 0.37) {
    if (std::fabs(x - std::round(x)) < 1e-9 && x <= 0.0) continue;
    const double lhs = scq::gamma(x + 1.0);
    const double rhs = x * scq::gamma(x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
  for (int i = 1; i <= 9; ++i) {
    const double x = 0.1 * i;
    const double refl = std::numbers::pi / std::sin(std::numbers::pi * x);
    CHECK(scq::gamma(x) * scq::gamma(1.0 - x) == doctest::Approx(refl).epsilon(1e-13));
  }
}

TEST_CASE("gamma poles throw, rgamma vanishes there") {
  CHECK_THROWS_AS(scq::gamma(0.0), scq::PoleError);
  CHECK_THROWS_AS(scq::gamma(-3.0), scq::PoleError);
  CHECK(scq::rgamma(0.0) == 0.0);
  CHECK(scq::rgamma(-2.0) == 0.0);
  CHECK(scq::rgamma(3.0) == doctest::Approx(0.5));
}

TEST_CASE("mittag-leffler reference values") {
  CHECK(mittag_leffler({1.0, 1.0}, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(mittag_leffler({0.7, 1.0}, 0.0) == 1.0);
  CHECK(std::fabs(mittag_leffler({0.5, 1.0}, -1.0) - 0.4275835761558070) < 1e-13);
}

TEST_CASE("mittag-leffler half order matches exp(z^2) erfc(-z)") {
  for (double z = -26.0; z <= 4.0; z += 0.25) {
    const double ref = std::exp(z * z) * std::erfc(-z);
    CHECK(std::fabs(mittag_leffler({0.5, 1.0}, z) - ref) < 1e-10 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("mittag-leffler order two is cos/cosh of the square root") {
  for (double z = -50.0; z <= 20.0; z += 0.5) {
    const double ref = z < 0.0 ? std::cos(std::sqrt(-z)) : std::cosh(std::sqrt(z));
    CHECK(std::fabs(mittag_leffler({2.0, 1.0}, z) - ref) < 1e-10 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("mittag-leffler order one is exp on |z| <= 20") {
  for (double z = -20.0; z <= 20.0; z += 0.5) {
    const double ref = std::exp(z);
    CHECK(std::fabs(mittag_leffler({1.0, 1.0}, z) - ref) <= 1e-12 * std::max(1.0, ref));
  }
}

TEST_CASE("E_{1,2}(z) = (e^z - 1)/z") {
  for (double z = -30.0; z <= 10.0; z += 0.75) {
    if (z == 0.0) continue;
    const double ref = std::expm1(z) / z;
    CHECK(std::fabs(mittag_leffler({1.0, 2.0}, z) - ref) < 1e-10 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("property: E_{a,b}(0) = 1/Gamma(b)") {
  Gen g(11);
  for (int i = 0; i < 100; ++i) {
    const double a = g.uniform(0.05, 2.0);
    const double b = g.uniform(-3.0, 6.0);
    CHECK(mittag_leffler({a, b}, 0.0) == doctest::Approx(scq::rgamma(b)).epsilon(1e-14));
  }
}

TEST_CASE("property: E_a positive and decreasing on [-50, 0] for a < 1") {
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    double prev = mittag_leffler({a, 1.0}, 0.0);
    for (double z = -0.05; z >= -50.0; z -= 0.05) {
      const double v = mittag_leffler({a, 1.0}, z);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("property: algebraic decay shape |E_a(z)| (1 + |z|) bounded on [-50, -5]") {
  for (double a : {0.2, 0.5, 0.8}) {
    // Fit C on the first half of the range and check it holds on the rest.
    double c = 0.0;
    for (double z = -5.0; z >= -25.0; z -= 0.25) c = std::max(c, std::fabs(mittag_leffler({a, 1.0}, z)) * (1.0 - z));
    for (double z = -25.0; z >= -50.0; z -= 0.25) {
      CHECK(std::fabs(mittag_leffler({a, 1.0}, z)) * (1.0 - z) <= 1.05 * c);
    }
  }
}
