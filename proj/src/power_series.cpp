#include "scq/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scq/errors.hpp"
#include "scq/kernels.hpp"

namespace scq {

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

void require_same_truncation(const Series& a, const Series& b, const char* op) {
  if (a.truncation() != b.truncation()) {
    std::ostringstream os;
    os << op << ": truncation mismatch (" << a.truncation() << " vs " << b.truncation() << ")";
    throw ConstraintError(os.str());
  }
}

}  // namespace

Series::Series(std::size_t n) : n_(n), c_(n + 1, 0.0) {}

Series::Series(std::vector<double> coeffs, std::size_t n) : n_(n), c_(std::move(coeffs)) {
  c_.resize(n + 1, 0.0);
}

Series::Series(std::initializer_list<double> coeffs, std::size_t n)
    : Series(std::vector<double>(coeffs), n) {}

Series Series::one(std::size_t n) {
  Series s(n);
  s[0] = 1.0;
  return s;
}

std::size_t Series::degree() const {
  for (std::size_t k = n_; k > 0; --k) {
    if (c_[k] != 0.0) return k;
  }
  return 0;
}

Series operator+(const Series& a, const Series& b) {
  require_same_truncation(a, b, "series_add");
  Series r(a.truncation());
  for (std::size_t k = 0; k <= a.truncation(); ++k) r[k] = a[k] + b[k];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  require_same_truncation(a, b, "series_sub");
  Series r(a.truncation());
  for (std::size_t k = 0; k <= a.truncation(); ++k) r[k] = a[k] - b[k];
  return r;
}

Series operator*(double s, const Series& a) {
  Series r(a.truncation());
  for (std::size_t k = 0; k <= a.truncation(); ++k) r[k] = s * a[k];
  return r;
}

Series operator*(const Series& a, const Series& b) {
  require_same_truncation(a, b, "series_mul");
  const std::size_t n = a.truncation();
  Series r(n);
  kernels::parallel::cauchy_product(a.coeffs().data(), a.degree(), b.coeffs().data(), b.degree(),
                                    &r[0], n);
  return r;
}

Series real_pow(const Series& u, double r) {
  const std::size_t n = u.truncation();
  const double u0 = u[0];
  if (u0 == 0.0) throw ConstraintError("series_real_pow: zero constant term");
  if (u0 < 0.0 && r != std::floor(r)) {
    throw ConstraintError("series_real_pow: negative constant term with non-integer power");
  }
  Series w(n);
  w[0] = std::pow(u0, r);
  if (r == 0.0) return w;
  const std::size_t d = u.degree();
  for (std::size_t k = 1; k <= n; ++k) {
    CompensatedSum acc;
    const std::size_t top = std::min(k, d);
    for (std::size_t j = 1; j <= top; ++j) {
      const double coef = (r + 1.0) * static_cast<double>(j) - static_cast<double>(k);
      acc.add(coef * u[j] * w[k - j]);
    }
    w[k] = acc.value() / (static_cast<double>(k) * u0);
  }
  return w;
}

Series inverse(const Series& u) {
  const std::size_t n = u.truncation();
  const double u0 = u[0];
  if (u0 == 0.0) throw ConstraintError("series_inverse: zero constant term");
  Series v(n);
  v[0] = 1.0 / u0;
  const std::size_t d = u.degree();
  for (std::size_t k = 1; k <= n; ++k) {
    CompensatedSum acc;
    const std::size_t top = std::min(k, d);
    for (std::size_t j = 1; j <= top; ++j) acc.add(u[j] * v[k - j]);
    v[k] = -acc.value() / u0;
  }
  return v;
}

Series rebase_to_one_minus_xi(const Series& u) {
  const std::size_t n = u.truncation();
  const std::size_t d = u.degree();
  // Taylor shift p(x) -> p(x + 1) by repeated synthetic division, then
  // x -> -x gives the coefficients of p(1 - x).
  std::vector<double> c(u.coeffs().begin(), u.coeffs().begin() + static_cast<long>(d) + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = d - 1; j + 1 > i; --j) {
      c[j] += c[j + 1];
      if (j == 0) break;
    }
  }
  Series r(n);
  for (std::size_t k = 0; k <= d; ++k) r[k] = (k % 2 == 0) ? c[k] : -c[k];
  return r;
}

double evaluate(const Series& u, double x) {
  double acc = 0.0;
  for (std::size_t k = u.degree() + 1; k > 0; --k) acc = acc * x + u[k - 1];
  return acc;
}

}  // namespace scq
