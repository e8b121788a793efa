#include <doctest.h>

#include <complex>
#include <cstring>

#include "gen.hpp"
#include "scq/kernels.hpp"

using namespace scq;

TEST_CASE("property: cauchy products agree bitwise") {
  Gen g(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t da = static_cast<std::size_t>(g.integer(0, 300));
    const std::size_t db = static_cast<std::size_t>(g.integer(0, 300));
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 600));
    std::vector<double> a(da + 1), b(db + 1);
    for (double& x : a) x = g.uniform(-1.0, 1.0);
    for (double& x : b) x = g.uniform(-1.0, 1.0);
    std::vector<double> s(n + 1, 7.0), p(n + 1, -7.0);
    kernels::serial::cauchy_product(a.data(), da, b.data(), db, s.data(), n);
    kernels::parallel::cauchy_product(a.data(), da, b.data(), db, p.data(), n);
    CHECK(std::memcmp(s.data(), p.data(), s.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("property: winding numbers agree") {
  Gen g(29);
  const std::size_t m = 512;
  std::vector<std::complex<double>> num(m), den(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto xi = std::polar(0.9, 2.0 * 3.141592653589793 * k / m);
    num[k] = xi * xi - 0.25;
    den[k] = 1.0 + 0.3 * xi;
  }
  std::vector<std::complex<double>> zs;
  for (int i = 0; i < 300; ++i) zs.emplace_back(g.uniform(-2, 2), g.uniform(-2, 2));
  const auto s = kernels::serial::winding_batch(num, den, zs);
  const auto p = kernels::parallel::winding_batch(num, den, zs);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].winding == p[i].winding);
    CHECK(s[i].min_abs == p[i].min_abs);
    CHECK(s[i].max_step == p[i].max_step);
  }
  // z = 0: F = xi^2 - 1/4 has both roots inside.
  CHECK(kernels::serial::winding_batch(num, den, {0.0})[0].winding == 2);
}

TEST_CASE("property: history sums agree bitwise") {
  Gen g(31);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 200));
    const std::size_t dim = static_cast<std::size_t>(g.integer(1, 300));
    std::vector<double> w(n + 1);
    for (double& x : w) x = g.uniform(-1.0, 1.0);
    std::vector<std::vector<double>> v(n, std::vector<double>(dim));
    for (auto& row : v) {
      for (double& x : row) x = g.uniform(-1.0, 1.0);
    }
    std::vector<double> hs(dim), hp(dim);
    kernels::serial::history_sum(w, v, n, hs.data(), dim);
    kernels::parallel::history_sum(w, v, n, hp.data(), dim);
    CHECK(std::memcmp(hs.data(), hp.data(), dim * sizeof(double)) == 0);
  }
}
