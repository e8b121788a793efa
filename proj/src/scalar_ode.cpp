#include "scq/scalar_ode.hpp"

#include <algorithm>
#include <cmath>

#include "scq/dense.hpp"
#include "scq/errors.hpp"
#include "scq/quadrature.hpp"
#include "scq/stability.hpp"

namespace scq {

CaputoRun solve_scalar_caputo(const GeneratingFunction& gf, double lambda, double y0, double t_end,
                              std::size_t n, const std::vector<double>& sigma) {
  if (!(gf.mu < 0.0)) throw ConstraintError("solve_scalar_caputo: needs a derivative generating function");
  if (n < 1 || !(t_end > 0.0)) throw ConstraintError("solve_scalar_caputo: need N >= 1 and T > 0");
  const double alpha = -gf.mu;
  const double tau = t_end / static_cast<double>(n);
  const double ta = std::pow(tau, -alpha);
  const WeightTable wt = expand_weights(gf, n);
  const ThetaWeights tw = theta_weights(gf.theta, gf.order, gf.unsafe);
  const std::vector<double>& om = wt.omega;
  const std::vector<double>& th = tw.w;

  StartingWeightSet sw, sw0;
  std::size_t coupled = 0;
  if (!sigma.empty()) {
    sw = starting_weights(wt, sigma, n);
    sw0 = starting_weights(as_weight_table(tw), sigma, n, CorrectionTarget::Interpolation);
    coupled = static_cast<std::size_t>(*std::max_element(sw.nodes.begin(), sw.nodes.end()));
    if (coupled > n) throw ConstraintError("solve_scalar_caputo: fewer steps than starting nodes");
  }

  // Coefficient of v^k in the level-n equation.
  auto coef = [&](std::size_t lvl, std::size_t k) {
    double c = 0.0;
    if (k <= lvl) c += ta * om[lvl - k];
    if (lvl >= k && lvl - k < th.size()) c -= lambda * th[lvl - k];
    if (!sigma.empty()) {
      for (std::size_t j = 0; j < sw.nodes.size(); ++j) {
        if (static_cast<std::size_t>(sw.nodes[j]) == k) c += ta * sw.w[lvl][j] - lambda * sw0.w[lvl][j];
      }
    }
    return c;
  };

  std::vector<double> v(n + 1, 0.0);
  if (coupled > 0) {
    std::vector<double> a(coupled * coupled);
    std::vector<double> b(coupled, lambda * y0);
    for (std::size_t r = 0; r < coupled; ++r) {
      for (std::size_t c = 0; c < coupled; ++c) a[r * coupled + c] = coef(r + 1, c + 1);
    }
    const std::vector<double> x = DenseLU(a, coupled).solve(b);
    for (std::size_t k = 0; k < coupled; ++k) v[k + 1] = x[k];
  }
  const double pivot = ta * om[0] - lambda * th[0];
  if (pivot == 0.0) throw NumericalError("solve_scalar_caputo: zero pivot");
  for (std::size_t lvl = coupled + 1; lvl <= n; ++lvl) {
    double rhs = lambda * y0;
    for (std::size_t k = 1; k < lvl; ++k) rhs -= coef(lvl, k) * v[k];
    v[lvl] = rhs / pivot;
  }

  CaputoRun run;
  run.t.resize(n + 1);
  run.y.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    run.t[k] = static_cast<double>(k) * tau;
    run.y[k] = v[k] + y0;
  }
  return run;
}

double max_error_vs_reference(const CaputoRun& run, double alpha, double lambda, double y0) {
  double e = 0.0;
  for (std::size_t k = 0; k < run.t.size(); ++k) {
    e = std::max(e, std::fabs(run.y[k] - reference_solution(alpha, lambda, y0, run.t[k])));
  }
  return e;
}

}  // namespace scq
