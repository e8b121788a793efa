#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "scq/power_series.hpp"

namespace scq {

enum class Family {
  Trapezoidal,
  BDFp,
  BTtheta,
  NewtonGregory,
  BNtheta,
  ShiftedOfCQ,
  ShiftedNewtonGregory,
  WSGL,
  LambdaShift,
  GBDF2theta,
  CentralDifference,
};

std::string family_name(Family f);

/// poly(xi)^power, poly in ascending powers of xi.
struct PowerFactor {
  std::vector<double> poly;
  double power = 1.0;
};

struct FamilyParams {
  int bdf_p = 0;
  int wsgl_p = 0;
  int wsgl_q = 0;
  int m = 0;
  double m_exact = std::numeric_limits<double>::quiet_NaN();
  double lambda1 = std::numeric_limits<double>::quiet_NaN();
  double lambda2 = std::numeric_limits<double>::quiet_NaN();
  double method_theta = 0.0;        // BT-theta / BN-theta parameter (not a shift)
  std::vector<double> gamma;        // cofactor coefficients in powers of (1 - xi)
  Family base = Family::BDFp;       // for ShiftedOfCQ
};

/// Generating function omega(xi) = prod_k poly_k(xi)^power_k, approximating
/// I^mu at the shifted node x_{n - theta}. mu > 0 is an integral, mu < 0 a
/// derivative.
class GeneratingFunction {
 public:
  Family family = Family::BDFp;
  double mu = 0.0;
  double theta = 0.0;
  int order = 1;
  FamilyParams params;
  std::vector<PowerFactor> factors;
  bool unsafe = false;  // constraints were overridden

  /// First N+1 power-series coefficients.
  Series expand(std::size_t n) const;

  /// omega at a complex point of the unit disk, principal branch fixed by
  /// continuity from xi = 0.
  std::complex<double> evaluate(std::complex<double> xi) const;

  /// omega(e^{-h}) for h > 0, evaluated in powers of (1 - xi) so the
  /// singular factor does not cancel.
  double evaluate_at_exp(double h) const;

  std::string name() const;

  // Builds the root and rebased-coefficient caches; called by constructors.
  void finalize();

  struct FactorCache {
    double p0 = 1.0;
    std::vector<std::complex<double>> roots;
    std::vector<double> u_poly;  // poly rebased to powers of (1 - xi)
    bool integer_power = false;
  };
  const std::vector<FactorCache>& cache() const { return cache_; }

 private:
  std::vector<FactorCache> cache_;
};

GeneratingFunction make_trapezoidal(double mu, bool unsafe = false);
GeneratingFunction make_bdf(int p, double mu, bool unsafe = false);
GeneratingFunction make_bt_theta(double method_theta, double mu, bool unsafe = false);
GeneratingFunction make_newton_gregory(int p, double mu);
GeneratingFunction make_bn_theta(double method_theta, double mu, bool unsafe = false);
GeneratingFunction shift_of_cq(const GeneratingFunction& base, double theta);
GeneratingFunction make_shifted_newton_gregory(int p, double mu, double theta, bool unsafe = false);
GeneratingFunction make_wsgl(int p, int q, double mu, bool unsafe = false);
GeneratingFunction make_lambda_shift(double mu, double theta, bool unsafe = false);
GeneratingFunction make_gbdf2_theta(double mu, double theta, bool unsafe = false);
GeneratingFunction make_central_difference(double mu);

/// gamma''_i = (-1)^i binom(theta, i), i < p: coefficients of xi^theta in
/// powers of (1 - xi).
std::vector<double> shift_coefficients(double theta, int p);

/// gamma_i, i < p, of (1-u)^theta (-ln(1-u)/u)^(-mu) in powers of u.
std::vector<double> shifted_ng_coefficients(int p, double mu, double theta);

/// theta making the two-term shifted Newton-Gregory formula third order.
double superconvergent_theta_order3(double mu);

/// theta for which the lambda-shift construction has integer exponent m.
double lambda_shift_theta(double mu, int m);

}  // namespace scq
