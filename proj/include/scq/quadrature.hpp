#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scq/genfun.hpp"

namespace scq {

struct WeightTable {
  std::vector<double> omega;
  double mu = 0.0;
  double theta = 0.0;
  int p = 1;
};

WeightTable expand_weights(const GeneratingFunction& gf, std::size_t n);

/// Interpolation weights for f(x_{n-theta}) ~ sum_j w_j f(x_{n-j}).
struct ThetaWeights {
  double theta = 0.0;
  int p = 2;
  std::vector<double> w;
};

/// Exact on polynomials of degree < p. For p = 2, 3 the zero-free bounds
/// theta <= 1/2 and theta <= 1 - sqrt(2)/2 are enforced unless unsafe;
/// other p check the roots of sum_j w_j xi^j directly.
ThetaWeights theta_weights(double theta, int p, bool unsafe = false);

/// Weight table of the pure interpolation rule (mu = 0).
WeightTable as_weight_table(const ThetaWeights& tw);

struct GridFunction {
  double h = 0.0;
  std::vector<double> values;  // f(0), f(h), ..., f(Nh)
};

/// Gamma(beta)/Gamma(mu+beta) x^(mu+beta-1), the order-mu Riemann-Liouville
/// integral (mu < 0: derivative) of t^(beta-1).
double rl_integral_monomial(double mu, double beta, double x);

enum class CorrectionTarget { Convolution, Interpolation };

/// Per-level correction weights w[n][j] at nodes t_j = nodes[j] * h that make
/// the rule exact on t^sigma for every sigma in the exponent set.
///
/// The moment system is independent of h. Exponents must exceed -1; 0^sigma
/// is taken as 0 except 0^0 = 1. Levels with n - theta <= 0 stay zero.
struct StartingWeightSet {
  std::vector<double> sigma;
  std::vector<int> nodes;
  std::size_t first_level = 0;
  std::vector<std::vector<double>> w;
  std::vector<double> residual;
  CorrectionTarget target = CorrectionTarget::Convolution;
};

StartingWeightSet starting_weights(const WeightTable& wt, const std::vector<double>& sigma,
                                   std::size_t n_max,
                                   CorrectionTarget target = CorrectionTarget::Convolution);

/// Residual threshold of the moment systems.
inline constexpr double kMomentResidualTol = 1e-8;

/// h^mu (sum_{j<=n} omega_j f((n-j)h) + sum_j w_{n,j} f(t_j)).
double apply_scq(const WeightTable& wt, const GridFunction& f, std::size_t n,
                 const StartingWeightSet* sw = nullptr);

struct OrderEstimate {
  double order = 0.0;
  bool determinate = false;
  double fit_residual = 0.0;
  std::vector<double> h;
  std::vector<double> deviation;
};

/// Slope of log|h^mu e^{theta h} omega(e^{-h}) - 1| against log h over
/// h = 2^-4 .. 2^-12 using the closed-form omega.
OrderEstimate consistency_order(const GeneratingFunction& gf);

struct ConditionOmegaReport {
  bool pass = true;
  std::vector<std::complex<double>> interior_roots;
  struct UnitSingularity {
    std::complex<double> xi;
    double alpha_j = 0.0;
  };
  std::vector<UnitSingularity> unit_singularities;
  std::vector<std::string> witnesses;
};

ConditionOmegaReport condition_omega_check(const GeneratingFunction& gf);

struct ConvergenceRow {
  std::size_t n = 0;
  double h = 0.0;
  double error = 0.0;
  double eoc = 0.0;  // NaN on the first row
};

struct ConvergenceOptions {
  std::vector<std::size_t> levels = {20, 40, 80, 160, 320, 640};
  // Integrand is t^(beta-1) g(t) with g = exp when true, g = 1 otherwise.
  bool exp_factor = true;
};

/// Error of the rule at x = 1 = (n - theta) h for f = t^(beta-1) [e^t],
/// with or without starting weights on {beta-1, beta, ..., beta+p-2}.
std::vector<ConvergenceRow> empirical_convergence(const GeneratingFunction& gf, double beta,
                                                  bool with_correction,
                                                  const ConvergenceOptions& opt = {});

/// Exact order-mu integral of t^(beta-1) e^t at x.
double rl_integral_exp_monomial(double mu, double beta, double x);

struct HomogeneityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double relative = 0.0;
  double node = 0.0;  // x_{n - theta} actually used
};

/// Compares the error functional at x_{n-theta} (n = x/h) with its
/// rescaled value at 1 on the step h / x_{n-theta}.
HomogeneityResult homogeneity_check(const GeneratingFunction& gf, double beta, double x, double h);

/// max |omega_n| n^(1-mu) over each of the two last decades of [1, N]; a
/// bounded ratio indicates stability.
struct StabilityTrend {
  double sup_previous = 0.0;
  double sup_last = 0.0;
  double variation = 0.0;
};
StabilityTrend stability_trend(const WeightTable& wt);

}  // namespace scq
