#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gen.hpp"
#include "scq/polynomial.hpp"

using scq::cplx;

TEST_CASE("closed-form low degrees") {
  auto r = scq::polynomial_roots({-2.0, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(r[0].real() == doctest::Approx(2.0));
  r = scq::polynomial_roots({1.0, 0.0, 1.0});
  REQUIRE(r.size() == 2);
  for (const cplx& z : r) CHECK(std::fabs(std::abs(z) - 1.0) < 1e-15);
  r = scq::polynomial_roots({0.0, 0.0, 1.0, 1.0});  // xi^2 (1 + xi)
  REQUIRE(r.size() == 3);
  CHECK(std::count(r.begin(), r.end(), cplx(0.0)) == 2);
}

TEST_CASE("property: roots of products of known factors") {
  Gen g(31);
  for (int t = 0; t < 40; ++t) {
    const int deg = g.integer(3, 9);
    std::vector<cplx> want;
    std::vector<cplx> poly{1.0};
    auto mul = [&](cplx a) {  // times (x - a)
      std::vector<cplx> out(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        out[i] -= a * poly[i];
        out[i + 1] += poly[i];
      }
      poly = out;
    };
    int k = 0;
    while (k < deg) {
      if (deg - k >= 2 && g.integer(0, 1) == 1) {
        const cplx z(g.uniform(-2.0, 2.0), g.uniform(0.2, 2.0));
        mul(z);
        mul(std::conj(z));
        want.push_back(z);
        want.push_back(std::conj(z));
        k += 2;
      } else {
        const double x = g.uniform(-2.0, 2.0);
        mul(x);
        want.emplace_back(x);
        ++k;
      }
    }
    std::vector<double> c(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) c[i] = poly[i].real();
    const auto got = scq::polynomial_roots(c);
    REQUIRE(got.size() == want.size());
    for (const cplx& w : want) {
      double best = 1e300;
      for (const cplx& z : got) best = std::min(best, std::abs(z - w));
      CHECK(best < 1e-7);
    }
  }
}
