#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace scq {

/// Truncated power series c_0 + c_1 xi + ... + c_N xi^N.
///
/// All operations return exact truncations at N; trailing zero
/// coefficients are tracked through degree() so that products with short
/// polynomials cost O(N * deg) instead of O(N^2).
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t n);  // zero series truncated at n
  Series(std::vector<double> coeffs, std::size_t n);
  Series(std::initializer_list<double> coeffs, std::size_t n);

  static Series one(std::size_t n);

  std::size_t truncation() const { return n_; }
  // Index of the last nonzero coefficient (0 for the zero series).
  std::size_t degree() const;

  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> c_ = std::vector<double>(1, 0.0);
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(double s, const Series& a);

/// u(xi)^r by the J.C.P. Miller power recurrence with compensated sums.
/// Throws ConstraintError when u_0 == 0 or when u_0 < 0 and r is not integral.
Series real_pow(const Series& u, double r);

/// Multiplicative inverse; throws ConstraintError when u_0 == 0.
Series inverse(const Series& u);

/// Re-expands coefficients in powers of xi into powers of (1 - xi).
/// The substitution is an involution, so this also converts back.
Series rebase_to_one_minus_xi(const Series& u);

/// Horner evaluation of the truncated series at a real point.
double evaluate(const Series& u, double x);

}  // namespace scq
