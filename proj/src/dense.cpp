#include "scq/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scq/errors.hpp"

namespace scq {

DenseLU::DenseLU(std::vector<double> a, std::size_t n)
    : n_(n), a_(std::move(a)), lu_(n * n), scale_(n, 1.0L), piv_(n) {
  if (a_.size() != n * n) throw ConstraintError("DenseLU: matrix size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    long double mx = 0.0L;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::fabs(static_cast<long double>(a_[i * n + j])));
    if (mx == 0.0L) throw NumericalError("DenseLU: zero column");
    scale_[j] = 1.0L / mx;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lu_[i * n + j] = a_[i * n + j] * scale_[j];
  }
  std::iota(piv_.begin(), piv_.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(lu_[i * n + k]) > std::fabs(lu_[p * n + k])) p = i;
    }
    if (lu_[p * n + k] == 0.0L) throw NumericalError("DenseLU: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[p * n + j]);
      std::swap(piv_[k], piv_[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = lu_[i * n + k] / lu_[k * n + k];
      lu_[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) lu_[i * n + j] -= f * lu_[k * n + j];
    }
  }
}

std::vector<long double> DenseLU::substitute(std::vector<long double> b) const {
  const std::size_t n = n_;
  std::vector<long double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[piv_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= lu_[i * n + j] * y[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu_[i * n + j] * y[j];
    y[i] /= lu_[i * n + i];
  }
  for (std::size_t j = 0; j < n; ++j) y[j] *= scale_[j];
  return y;
}

std::vector<double> DenseLU::solve(const std::vector<double>& b, double* residual) const {
  const std::size_t n = n_;
  std::vector<long double> rhs(b.begin(), b.end());
  std::vector<long double> x = substitute(rhs);
  auto resid = [&](const std::vector<long double>& xx) {
    std::vector<long double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      long double s = rhs[i];
      for (std::size_t j = 0; j < n; ++j) s -= static_cast<long double>(a_[i * n + j]) * xx[j];
      r[i] = s;
    }
    return r;
  };
  const std::vector<long double> r = resid(x);
  const std::vector<long double> dx = substitute(r);
  for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];

  std::vector<double> out(x.begin(), x.end());
  if (residual) {
    std::vector<long double> xd(out.begin(), out.end());
    const std::vector<long double> r2 = resid(xd);
    long double rn = 0.0L;
    long double bn = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      rn = std::max(rn, std::fabs(r2[i]));
      bn = std::max(bn, std::fabs(rhs[i]));
    }
    *residual = bn > 0.0L ? static_cast<double>(rn / bn) : static_cast<double>(rn);
  }
  return out;
}

}  // namespace scq
