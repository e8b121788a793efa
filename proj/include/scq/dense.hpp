#pragma once

#include <cstddef>
#include <vector>

namespace scq {

/// Small dense LU with partial pivoting and column equilibration, kept in
/// long double. Factor once, solve many right-hand sides.
class DenseLU {
 public:
  DenseLU() = default;
  // a is row-major n x n. Throws NumericalError when singular.
  DenseLU(std::vector<double> a, std::size_t n);

  std::size_t size() const { return n_; }

  // Solves A x = b with one step of iterative refinement; returns the
  // relative residual ||A x - b|| / ||b|| (infinity norms) through *residual.
  std::vector<double> solve(const std::vector<double>& b, double* residual = nullptr) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;           // original matrix
  std::vector<long double> lu_;     // factors of the column-scaled matrix
  std::vector<long double> scale_;  // column scaling
  std::vector<std::size_t> piv_;
  std::vector<long double> substitute(std::vector<long double> b) const;
};

}  // namespace scq
