#include "scq/fem1d.hpp"

#include <cmath>

#include "scq/errors.hpp"

namespace scq {

namespace {

// 3-point Gauss-Legendre on [0, 1].
constexpr double kGaussX[3] = {0.5 - 0.38729833462074168852, 0.5, 0.5 + 0.38729833462074168852};
constexpr double kGaussW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace

Mesh1D::Mesh1D(std::size_t m_) : m(m_), h(1.0 / static_cast<double>(m_)) {
  if (m_ < 2) throw ConstraintError("Mesh1D: need at least 2 intervals");
}

std::vector<double> Tridiagonal::apply(const std::vector<double>& x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += sub[i] * x[i - 1];
    if (i + 1 < n) s += sup[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

Tridiagonal assemble_mass(const Mesh1D& mesh) {
  const std::size_t n = mesh.interior();
  return {std::vector<double>(n, mesh.h / 6.0), std::vector<double>(n, 2.0 * mesh.h / 3.0),
          std::vector<double>(n, mesh.h / 6.0)};
}

Tridiagonal assemble_stiffness(const Mesh1D& mesh) {
  const std::size_t n = mesh.interior();
  return {std::vector<double>(n, -1.0 / mesh.h), std::vector<double>(n, 2.0 / mesh.h),
          std::vector<double>(n, -1.0 / mesh.h)};
}

Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B) {
  Tridiagonal r = A;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.sub[i] = a * A.sub[i] + b * B.sub[i];
    r.diag[i] = a * A.diag[i] + b * B.diag[i];
    r.sup[i] = a * A.sup[i] + b * B.sup[i];
  }
  return r;
}

std::vector<double> load_vector(const Mesh1D& mesh, const std::function<double(double)>& g) {
  const std::size_t n = mesh.interior();
  std::vector<double> f(n, 0.0);
  for (std::size_t e = 0; e < mesh.m; ++e) {
    const double x0 = mesh.node(e);
    for (int q = 0; q < 3; ++q) {
      const double s = kGaussX[q];
      const double gv = g(x0 + s * mesh.h) * kGaussW[q] * mesh.h;
      // left node e carries (1 - s), right node e+1 carries s
      if (e >= 1) f[e - 1] += gv * (1.0 - s);
      if (e + 1 <= n) f[e] += gv * s;
    }
  }
  return f;
}

std::vector<double> tridiag_solve(const Tridiagonal& a, const std::vector<double>& b) {
  return TridiagonalFactor(a).solve(b);
}

TridiagonalFactor::TridiagonalFactor(const Tridiagonal& a)
    : sub_(a.sub), inv_diag_(a.size()), sup_mod_(a.size()) {
  const std::size_t n = a.size();
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a.diag[i] - (i > 0 ? a.sub[i] * prev : 0.0);
    if (d == 0.0 || !std::isfinite(d)) throw NumericalError("tridiag_solve: zero pivot");
    inv_diag_[i] = 1.0 / d;
    prev = (i + 1 < n ? a.sup[i] : 0.0) * inv_diag_[i];
    sup_mod_[i] = prev;
  }
}

std::vector<double> TridiagonalFactor::solve(const std::vector<double>& b) const {
  const std::size_t n = inv_diag_.size();
  if (b.size() != n) throw ConstraintError("tridiag_solve: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (b[i] - (i > 0 ? sub_[i] * y[i - 1] : 0.0)) * inv_diag_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) y[i] -= sup_mod_[i] * y[i + 1];
  return y;
}

double l2_error(const Mesh1D& mesh, const std::vector<double>& nodal,
                const std::function<double(double)>& exact) {
  const std::size_t n = mesh.interior();
  if (nodal.size() != n) throw ConstraintError("l2_error: nodal vector size mismatch");
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.m; ++e) {
    const double ul = e >= 1 ? nodal[e - 1] : 0.0;
    const double ur = e + 1 <= n ? nodal[e] : 0.0;
    const double x0 = mesh.node(e);
    for (int q = 0; q < 3; ++q) {
      const double t = kGaussX[q];
      const double d = (1.0 - t) * ul + t * ur - exact(x0 + t * mesh.h);
      s += kGaussW[q] * mesh.h * d * d;
    }
  }
  return std::sqrt(s);
}

std::vector<double> interpolate(const Mesh1D& mesh, const std::function<double(double)>& f) {
  std::vector<double> v(mesh.interior());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh.node(i + 1));
  return v;
}

}  // namespace scq
