#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "scq/genfun.hpp"
#include "scq/kernels.hpp"
#include "scq/quadrature.hpp"

namespace scq {

using cplx = std::complex<double>;

enum class Scheme { I, II };

/// Scheme I: sum_k omega_{n-k} y^k = z sum_j theta_j y^{n-j} + f_n (Caputo
/// derivative, mu = -alpha). Scheme II: z sum_k omega_{n-k} y^k =
/// sum_j theta_j y^{n-j} (integral equation, mu = +alpha).
struct SchemeSpec {
  Scheme kind = Scheme::I;
  GeneratingFunction gf;
  ThetaWeights tw;
  double alpha = 0.5;
};

/// Pairs gf with the interpolation weights at its shift; the weights are
/// built without range checks since stability studies go past them.
SchemeSpec make_scheme(Scheme kind, const GeneratingFunction& gf);

inline constexpr double kContourEpsilon = 1e-6;

struct StabilityLocus {
  Scheme kind = Scheme::I;
  double radius = 1.0 - kContourEpsilon;
  double epsilon = kContourEpsilon;
  std::vector<cplx> samples;
  std::vector<std::size_t> skipped;  // sample indices where the denominator vanished
};

StabilityLocus boundary_locus(const SchemeSpec& s, std::size_t m,
                              double epsilon = kContourEpsilon);

struct RegionResult {
  bool in_region = false;
  int winding = 0;
  double min_abs = 0.0;
  bool boundary_adjacent = false;  // |F| dips below 10x the sample spacing
  bool inconclusive = false;       // refinement could not resolve the winding
};

/// Argument-principle membership test with omega and theta cached on the
/// contour |xi| = 1 - epsilon.
class RegionTester {
 public:
  explicit RegionTester(const SchemeSpec& s, std::size_t m = 4096,
                        double epsilon = kContourEpsilon);

  RegionResult test(cplx z) const;
  std::vector<RegionResult> test_batch(const std::vector<cplx>& zs) const;

  std::size_t samples() const { return num_.size(); }
  double epsilon() const { return eps_; }

 private:
  SchemeSpec spec_;
  double eps_;
  std::vector<cplx> num_, den_;
  void sample(std::size_t m, std::vector<cplx>& num, std::vector<cplx>& den) const;
  RegionResult finish(const kernels::Winding& w, cplx z) const;
};

RegionResult in_region(const SchemeSpec& s, cplx z);

struct ADeltaReport {
  bool stable = false;
  double delta = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t boundary_adjacent = 0;
  std::size_t inconclusive = 0;
  cplx first_failure = 0.0;
  // grid
  double r_min = 1e-3;
  double r_max = 1e6;
  int per_decade = 25;
  int rays = 64;
};

/// Samples |arg z - pi| < delta on a log-radial grid and reports whether
/// every sample lies in the stability region.
ADeltaReport a_delta_classify(const SchemeSpec& s, double delta);

/// Largest x0 such that the sampled interval (-x0, 0) is in the region.
/// Returns 0 if the first sample fails and +infinity if every magnitude up
/// to 1e6 passes.
double max_stable_interval(const SchemeSpec& s);

/// Scalar recursion in the scaled variable z = lambda h^alpha.
std::vector<cplx> recursion_run(const SchemeSpec& s, cplx z, cplx y0, std::size_t n);

struct RecursionResult {
  std::vector<double> y;
  bool diverged = false;
  std::size_t diverged_at = 0;
};

/// Real trajectory y^0..y^N for lambda, y0, h; stops early (and flags)
/// once |y^n| > 1e12.
RecursionResult scalar_recursion_run(const SchemeSpec& s, double lambda, double y0, double h,
                                     std::size_t n);

/// y0 E_alpha(lambda x^alpha).
double reference_solution(double alpha, double lambda, double y0, double x);

}  // namespace scq
