#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scq {

/// Uniform mesh of (0, 1) with M intervals; unknowns live at the M-1
/// interior nodes (homogeneous Dirichlet data).
struct Mesh1D {
  explicit Mesh1D(std::size_t m);
  std::size_t m;
  double h;
  std::size_t interior() const { return m - 1; }
  double node(std::size_t i) const { return static_cast<double>(i) * h; }  // i = 0..M
};

struct Tridiagonal {
  std::vector<double> sub, diag, sup;  // sub[0] and sup[n-1] unused
  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(const std::vector<double>& x) const;
};

Tridiagonal assemble_mass(const Mesh1D& mesh);
Tridiagonal assemble_stiffness(const Mesh1D& mesh);

/// a * A + b * B for equally sized matrices.
Tridiagonal combine(double a, const Tridiagonal& A, double b, const Tridiagonal& B);

/// (g, phi_i) for interior hats by 3-point Gauss on each element.
std::vector<double> load_vector(const Mesh1D& mesh, const std::function<double(double)>& g);

/// Thomas elimination; throws NumericalError on a zero pivot.
std::vector<double> tridiag_solve(const Tridiagonal& a, const std::vector<double>& b);

/// Thomas factorization reused across right-hand sides.
class TridiagonalFactor {
 public:
  explicit TridiagonalFactor(const Tridiagonal& a);
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  std::vector<double> sub_, inv_diag_, sup_mod_;
};

/// L2 norm of (piecewise linear interpolant of nodal) - exact, 3-point
/// Gauss per element.
double l2_error(const Mesh1D& mesh, const std::vector<double>& nodal,
                const std::function<double(double)>& exact);

/// Nodal values of f at interior nodes.
std::vector<double> interpolate(const Mesh1D& mesh, const std::function<double(double)>& f);

}  // namespace scq
