#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scq/fem1d.hpp"
#include "scq/quadrature.hpp"

namespace scq {

/// D^alpha u = u_xx + g on (0,1) x (0,T], u(.,0) = u0, u = 0 on the
/// boundary; time steps tau = T/N, M linear elements.
struct TFDEProblem {
  double alpha = 0.5;
  double theta = 0.0;
  double t_end = 1.0;
  std::size_t n = 10;
  std::size_t m = 10;
  std::function<double(double, double)> g;      // g(x, t)
  std::function<double(double)> u0;
  std::function<double(double, double)> exact;  // optional u(x, t)
  bool unsafe_theta = false;
};

/// Admissible shift interval [max(0, a/2 - (1-a)/(1+a)), a/2].
std::pair<double, double> theta_range(double alpha);

/// u = (1 + t^a + t^2a + t^3) sin(2 pi x) with its source term.
TFDEProblem manufactured_problem(double alpha, double theta, std::size_t n, std::size_t m);

/// omega(xi) = (1-xi)^a [1 + (a/2 - theta)(1-xi)], first N+1 weights.
WeightTable scheme_weights(double alpha, double theta, std::size_t n, bool unsafe = false);

struct GronwallKernels {
  std::vector<double> a;      // A_k, units tau^-alpha
  std::vector<double> p;      // P_k, units tau^alpha
  std::vector<double> theta;  // Theta_n
  double pi_a = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
};

GronwallKernels gronwall_kernels(double alpha, double theta, double tau, std::size_t n);

/// max_n |sum_j P_{n-j} A_j - 1|.
double kernel_identity_defect(const GronwallKernels& k);

/// Step bound tau <= (2 pi_A Gamma(2-alpha) Lambda)^(-1/alpha) with Lambda = 1.
double gronwall_step_bound(const GronwallKernels& k);

struct PDESolution {
  std::vector<double> t;
  std::vector<std::vector<double>> u;  // interior nodal values U^n
  std::vector<double> err_l2;          // ||u(t_n) - U^n|| in L2(0,1)
  std::vector<double> err_nodal;       // ||I_h u(t_n) - U^n|| in L2(0,1)
  double max_err_l2 = 0.0;
  double max_err_nodal = 0.0;
  bool analysis_valid = false;
};

/// Fully discrete scheme; sigma empty means no starting part. Each of the
/// two starting sums gets its own weights on the same exponent set.
PDESolution solve(const TFDEProblem& p, const std::vector<double>& sigma = {});

enum class Vary { Time, Space };
enum class ErrorNorm { L2, Nodal };

struct StudyRow {
  double alpha = 0.0;
  double theta = 0.0;
  double tau = 0.0;
  double h = 0.0;
  double ec = 0.0;
  double rate_c = 0.0;  // NaN on the first row of a case
  double eo = 0.0;
  double rate_o = 0.0;
};

struct StudyOptions {
  Vary vary = Vary::Time;
  std::vector<std::pair<double, double>> cases;  // (alpha, theta)
  std::size_t fixed = 1000;  // M for a time study, N for a space study
  std::size_t base = 10;     // coarsest N (time) or M (space)
  int ladder = 4;            // number of halvings including the coarsest
  std::vector<double> sigma; // empty: {alpha, 2 alpha}
  ErrorNorm norm = ErrorNorm::L2;
  bool uncorrected = true;
};

/// Rows sorted by case then by step; cases run concurrently.
std::vector<StudyRow> convergence_study(const StudyOptions& opt);

}  // namespace scq
