#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "scq/errors.hpp"
#include "scq/fem1d.hpp"

using namespace scq;

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

Tridiagonal random_spd(Gen& g, std::size_t n) {
  Tridiagonal a;
  a.sub.assign(n, 0.0);
  a.sup.assign(n, 0.0);
  a.diag.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    a.sub[i] = g.uniform(-1.0, 1.0);
    a.sup[i - 1] = a.sub[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    a.diag[i] = 2.1 + g.uniform(0.0, 1.0);
  }
  return a;
}

}  // namespace

TEST_CASE("mass and stiffness") {
  const Mesh1D m2(2);
  const Tridiagonal mm2 = assemble_mass(m2);
  REQUIRE(mm2.size() == 1);
  CHECK(mm2.diag[0] == doctest::Approx(2.0 * 0.5 / 3.0));
  CHECK(assemble_stiffness(m2).diag[0] == doctest::Approx(2.0 / 0.5));
  const Mesh1D m4(4);
  const Tridiagonal mm = assemble_mass(m4);
  for (double d : mm.diag) CHECK(d == doctest::Approx(2.0 * 0.25 / 3.0));
  // Interior row sums of M equal h.
  const std::vector<double> ones(3, 1.0);
  CHECK(mm.apply(ones)[1] == doctest::Approx(0.25));
  const Tridiagonal kk = assemble_stiffness(m4);
  CHECK(kk.sub[1] == doctest::Approx(-4.0));
  CHECK(kk.sup[0] == doctest::Approx(-4.0));
}

TEST_CASE("stiffness applied to a parabola is the discrete laplacian") {
  const Mesh1D mesh(16);
  const auto v = interpolate(mesh, [](double x) { return x * (1.0 - x); });
  const auto kv = assemble_stiffness(mesh).apply(v);
  // -u'' = 2 lumped against hats of width 2h.
  for (double x : kv) CHECK(x == doctest::Approx(2.0 * mesh.h).epsilon(1e-12));
  double e = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) e += v[i] * kv[i];
  CHECK(e > 0.0);
}

TEST_CASE("smallest stiffness eigenvalue approaches pi^2") {
  // Generalized problem K x = lambda M x, inverse iteration.
  const Mesh1D mesh(64);
  const Tridiagonal kk = assemble_stiffness(mesh), mm = assemble_mass(mesh);
  const TridiagonalFactor f(kk);
  std::vector<double> x(mesh.interior(), 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    x = f.solve(mm.apply(x));
    const auto kx = kk.apply(x), mx = mm.apply(x);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      num += x[i] * kx[i];
      den += x[i] * mx[i];
    }
    lambda = num / den;
    const double s = std::sqrt(den);
    for (double& xi : x) xi /= s;
  }
  CHECK(std::fabs(lambda / (kPi * kPi) - 1.0) < 0.05);
}

TEST_CASE("load vector") {
  const Mesh1D mesh(64);
  for (double v : load_vector(mesh, [](double) { return 1.0; })) CHECK(v == doctest::Approx(mesh.h).epsilon(1e-14));
  for (double v : load_vector(mesh, [](double) { return 0.0; })) CHECK(v == 0.0);
  const auto f = load_vector(mesh, [](double x) { return std::sin(2 * kPi * x); });
  // Hat integral of sin(2 pi x) is h sin(2 pi x_i) (sin(pi h)/(pi h))^2.
  const double c = std::pow(std::sin(kPi * mesh.h) / (kPi * mesh.h), 2);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double ref = mesh.h * std::sin(2 * kPi * mesh.node(i + 1)) * c;
    CHECK(std::fabs(f[i] - ref) < 1e-9 * mesh.h);
  }
}

TEST_CASE("tridiagonal solves") {
  Tridiagonal id;
  id.diag.assign(5, 1.0);
  id.sub.assign(5, 0.0);
  id.sup.assign(5, 0.0);
  const std::vector<double> b = {1, 2, 3, 4, 5};
  CHECK(tridiag_solve(id, b) == b);

  const Mesh1D mesh(32);
  const auto u = tridiag_solve(assemble_stiffness(mesh), load_vector(mesh, [](double) { return 1.0; }));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = mesh.node(i + 1);
    CHECK(u[i] == doctest::Approx(0.5 * x * (1 - x)).epsilon(1e-12));
  }

  Gen g(3);
  for (int t = 0; t < 10; ++t) {
    const Tridiagonal a = random_spd(g, 50);
    std::vector<double> rhs(50);
    for (double& r : rhs) r = g.uniform(-1.0, 1.0);
    const auto x = tridiag_solve(a, rhs);
    auto r = a.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
    CHECK(inf_norm(r) <= 1e-12 * inf_norm(rhs));
    const auto y = TridiagonalFactor(a).solve(rhs);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-14));
  }

  Tridiagonal sing;
  sing.diag = {0.0, 1.0};
  sing.sub = {0.0, 1.0};
  sing.sup = {1.0, 0.0};
  CHECK_THROWS_AS(tridiag_solve(sing, {1.0, 1.0}), NumericalError);
}

TEST_CASE("l2 error") {
  const auto s = [](double x) { return std::sin(2 * kPi * x); };
  const Mesh1D z(8);
  CHECK(l2_error(z, std::vector<double>(7, 0.0), [](double) { return 0.0; }) == 0.0);
  double prev = 0.0;
  for (std::size_t m : {16u, 32u, 64u, 128u}) {
    const Mesh1D mesh(m);
    const double e = l2_error(mesh, interpolate(mesh, s), s);
    CHECK(e > 0.0);
    if (prev > 0.0) CHECK(prev / e == doctest::Approx(4.0).epsilon(0.02));
    prev = e;
  }
}

TEST_CASE("property: matrices are symmetric and definite") {
  Gen g(5);
  for (int t = 0; t < 10; ++t) {
    const Mesh1D mesh(static_cast<std::size_t>(g.integer(2, 80)));
    for (const Tridiagonal& a : {assemble_mass(mesh), assemble_stiffness(mesh)}) {
      for (std::size_t i = 1; i < a.size(); ++i) CHECK(a.sub[i] == a.sup[i - 1]);
      std::vector<double> x(a.size());
      for (double& xi : x) xi = g.uniform(-1.0, 1.0);
      const auto ax = a.apply(x);
      double q = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) q += x[i] * ax[i];
      CHECK(q > 0.0);
      CHECK_NOTHROW(TridiagonalFactor{a});
    }
  }
}

TEST_CASE("property: triangle inequality of the L2 distance") {
  Gen g(6);
  const Mesh1D mesh(40);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> a(39), b(39);
    for (double& x : a) x = g.uniform(-1.0, 1.0);
    for (double& x : b) x = g.uniform(-1.0, 1.0);
    const double k = g.uniform(1.0, 5.0);
    const auto f = [k](double x) { return std::cos(k * x); };
    std::vector<double> diff(39);
    for (std::size_t i = 0; i < 39; ++i) diff[i] = a[i] - b[i];
    const double ab = l2_error(mesh, diff, [](double) { return 0.0; });
    CHECK(l2_error(mesh, a, f) <= ab + l2_error(mesh, b, f) + 1e-14);
  }
}
