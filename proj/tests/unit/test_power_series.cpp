#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "scq/errors.hpp"
#include "scq/power_series.hpp"

using scq::Series;

namespace {

void check_coeffs(const Series& s, std::initializer_list<double> ref, double tol = 1e-15) {
  std::size_t k = 0;
  for (double r : ref) {
    CHECK(s[k] == doctest::Approx(r).epsilon(tol));
    ++k;
  }
}

Series random_series(Gen& g, std::size_t n, double c0) {
  Series s(n);
  s[0] = c0;
  for (std::size_t k = 1; k <= n; ++k) s[k] = g.uniform(-1.0, 1.0) / static_cast<double>(k * k);
  return s;
}

}  // namespace

TEST_CASE("products") {
  check_coeffs(Series({1.0, 1.0}, 2) * Series({1.0, -1.0}, 2), {1.0, 0.0, -1.0});
  check_coeffs(Series({1.0, 1.0}, 2) * Series({1.0, 1.0}, 2), {1.0, 2.0, 1.0});
  const Series a({0.3, -2.0, 5.0, 7.0}, 3);
  const Series p = a * Series::one(3);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(p[k] == a[k]);
}

TEST_CASE("real powers") {
  // (1 - xi)^(-1/2): rho_k = rho_{k-1} (k - 1 + 1/2) / k.
  const Series s = scq::real_pow(Series({1.0, -1.0}, 30), -0.5);
  double rho = 1.0;
  for (std::size_t k = 0; k <= 30; ++k) {
    if (k > 0) rho *= (static_cast<double>(k) - 0.5) / static_cast<double>(k);
    CHECK(s[k] == doctest::Approx(rho).epsilon(1e-14));
  }
  check_coeffs(s, {1.0, 0.5, 0.375, 0.3125});
  check_coeffs(scq::real_pow(Series({2.0, 3.0, -1.0}, 4), 0.0), {1.0, 0.0, 0.0, 0.0, 0.0});
  check_coeffs(scq::real_pow(Series({1.0, -1.0}, 4), 2.0), {1.0, -2.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(scq::real_pow(Series({0.0, 1.0}, 3), 0.5), scq::ConstraintError);
}

TEST_CASE("inverse") {
  check_coeffs(scq::inverse(Series({1.0, -1.0}, 5)), {1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  check_coeffs(scq::inverse(Series({2.0, 0.0, 0.0}, 2)), {0.5, 0.0, 0.0});
  check_coeffs(scq::inverse(Series({1.0, 1.0}, 3)), {1.0, -1.0, 1.0, -1.0});
  CHECK_THROWS_AS(scq::inverse(Series({0.0, 1.0}, 3)), scq::ConstraintError);
}

TEST_CASE("rebasing to powers of one minus xi") {
  check_coeffs(scq::rebase_to_one_minus_xi(Series({0.0, 1.0}, 1)), {1.0, -1.0});
  check_coeffs(scq::rebase_to_one_minus_xi(Series({1.0, 0.0, 0.0}, 2)), {1.0, 0.0, 0.0});
  check_coeffs(scq::rebase_to_one_minus_xi(Series({0.0, 0.0, 1.0}, 2)), {1.0, -2.0, 1.0});
}

TEST_CASE("property: pow then inverse pow round-trips") {
  Gen g(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(4, 64));
    // Well scaled: the constant term dominates, so u has no zero in the
    // closed unit disk and no power of it grows.
    Series u = random_series(g, n, 0.0);
    double tail = 0.0;
    for (std::size_t k = 1; k <= n; ++k) tail += std::fabs(u[k]);
    u[0] = g.uniform(1.0, 2.0) * (1.0 + tail);
    const double a = g.uniform(-2.0, 2.0);
    if (std::fabs(a) < 0.25) continue;
    const Series back = scq::real_pow(scq::real_pow(u, a), 1.0 / a);
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(std::fabs(back[k] - u[k]) <= 1e-12 * std::max(1.0, std::fabs(u[k])));
    }
  }
}

TEST_CASE("property: rebase is an involution") {
  Gen g(22);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 12));
    const Series u = random_series(g, n, g.uniform(-1.0, 1.0));
    const Series back = scq::rebase_to_one_minus_xi(scq::rebase_to_one_minus_xi(u));
    for (std::size_t k = 0; k <= n; ++k) CHECK(back[k] == doctest::Approx(u[k]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("property: multiplication commutes and associates") {
  Gen g(23);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 40));
    const Series a = random_series(g, n, g.uniform(-1.0, 1.0));
    const Series b = random_series(g, n, g.uniform(-1.0, 1.0));
    const Series c = random_series(g, n, g.uniform(-1.0, 1.0));
    const Series ab = a * b, ba = b * a;
    const Series l = (a * b) * c, r = a * (b * c);
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(ab[k] == doctest::Approx(ba[k]).epsilon(1e-14).scale(1.0));
      CHECK(l[k] == doctest::Approx(r[k]).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("property: u * inverse(u) is one") {
  Gen g(24);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 60));
    const Series u = random_series(g, n, g.uniform(1.0, 3.0));
    const Series p = u * scq::inverse(u);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 1; k <= n; ++k) CHECK(std::fabs(p[k]) < 1e-13);
  }
}
