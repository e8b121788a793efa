#include "scq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "scq/dense.hpp"
#include "scq/errors.hpp"
#include "scq/polynomial.hpp"
#include "scq/special_functions.hpp"

namespace scq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Compensated {
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

// t^sigma with 0^sigma = 0 for sigma != 0 and 0^0 = 1.
double mpow(double t, double sigma) {
  if (t == 0.0) return sigma == 0.0 ? 1.0 : 0.0;
  return std::pow(t, sigma);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

WeightTable expand_weights(const GeneratingFunction& gf, std::size_t n) {
  if (n < 1) throw ConstraintError("expand_weights: N must be >= 1");
  WeightTable wt;
  wt.omega = gf.expand(n).coeffs();
  wt.mu = gf.mu;
  wt.theta = gf.theta;
  wt.p = gf.order;
  return wt;
}

ThetaWeights theta_weights(double theta, int p, bool unsafe) {
  if (p < 1) throw ConstraintError("theta_weights: p must be >= 1");
  if (!unsafe) {
    if (p == 2 && theta > 0.5) {
      throw ConstraintError("theta_weights: p = 2 requires theta <= 1/2, got " + fmt(theta));
    }
    if (p == 3 && theta > 1.0 - std::sqrt(2.0) / 2.0) {
      throw ConstraintError("theta_weights: p = 3 requires theta <= 1 - sqrt(2)/2, got " + fmt(theta));
    }
  }
  ThetaWeights tw;
  tw.theta = theta;
  tw.p = p;
  const std::vector<double> g = shift_coefficients(theta, p);
  const std::size_t n = static_cast<std::size_t>(p - 1);
  tw.w = rebase_to_one_minus_xi(Series(g, n)).coeffs();
  if (!unsafe && p > 3) {
    for (const auto& r : polynomial_roots(tw.w)) {
      if (std::abs(r) < 1.0 - 1e-10) {
        throw ConstraintError("theta_weights: interpolation polynomial has a zero inside the unit disk");
      }
    }
  }
  return tw;
}

WeightTable as_weight_table(const ThetaWeights& tw) {
  WeightTable wt;
  wt.omega = tw.w;
  wt.mu = 0.0;
  wt.theta = tw.theta;
  wt.p = tw.p;
  return wt;
}

double rl_integral_monomial(double mu, double beta, double x) {
  const double g = gamma(beta);
  const double r = rgamma(mu + beta);
  if (r == 0.0) return 0.0;
  return g * r * std::pow(x, mu + beta - 1.0);
}

StartingWeightSet starting_weights(const WeightTable& wt, const std::vector<double>& sigma,
                                   std::size_t n_max, CorrectionTarget target) {
  const std::size_t s = sigma.size();
  if (s == 0 || s > 8) throw ConstraintError("starting_weights: need 1..8 exponents");
  for (std::size_t i = 0; i < s; ++i) {
    if (!(sigma[i] > -1.0)) throw ConstraintError("starting_weights: exponents must exceed -1");
    for (std::size_t j = 0; j < i; ++j) {
      if (sigma[i] == sigma[j]) throw ConstraintError("starting_weights: exponents must be distinct");
    }
  }
  const bool has_zero = std::find(sigma.begin(), sigma.end(), 0.0) != sigma.end();

  StartingWeightSet sw;
  sw.sigma = sigma;
  sw.target = target;
  sw.nodes.resize(s);
  for (std::size_t j = 0; j < s; ++j) sw.nodes[j] = static_cast<int>(has_zero ? j : j + 1);

  std::vector<double> a(s * s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) a[i * s + j] = mpow(sw.nodes[j], sigma[i]);
  }
  const DenseLU lu(a, s);

  const double mu = wt.mu;
  std::vector<double> moment(s);
  for (std::size_t i = 0; i < s; ++i) moment[i] = gamma(sigma[i] + 1.0) * rgamma(sigma[i] + 1.0 + mu);

  sw.first_level = static_cast<std::size_t>(std::max(0.0, std::floor(wt.theta) + 1.0));
  sw.w.assign(n_max + 1, std::vector<double>(s, 0.0));
  sw.residual.assign(n_max + 1, 0.0);

  // k^sigma tables reused by every level.
  std::vector<std::vector<double>> kp(s, std::vector<double>(n_max + 1));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k <= n_max; ++k) kp[i][k] = mpow(static_cast<double>(k), sigma[i]);
  }
  const std::size_t nw = wt.omega.size();
  std::vector<double> b(s);
  for (std::size_t n = sw.first_level; n <= n_max; ++n) {
    const double node = static_cast<double>(n) - wt.theta;
    for (std::size_t i = 0; i < s; ++i) {
      Compensated acc;
      acc.add(moment[i] * std::pow(node, sigma[i] + mu));
      const std::size_t kmin = n + 1 > nw ? n + 1 - nw : 0;
      for (std::size_t k = kmin; k <= n; ++k) acc.add(-wt.omega[n - k] * kp[i][k]);
      b[i] = acc.value();
    }
    double res = 0.0;
    sw.w[n] = lu.solve(b, &res);
    sw.residual[n] = res;
    if (!(res < kMomentResidualTol)) {
      throw NumericalError("starting_weights: moment system residual " + fmt(res) + " at level " +
                           std::to_string(n));
    }
  }
  return sw;
}

double apply_scq(const WeightTable& wt, const GridFunction& f, std::size_t n,
                 const StartingWeightSet* sw) {
  if (n >= f.values.size()) throw ConstraintError("apply_scq: level beyond grid");
  Compensated acc;
  const std::size_t nw = wt.omega.size();
  for (std::size_t j = 0; j <= n && j < nw; ++j) acc.add(wt.omega[j] * f.values[n - j]);
  if (sw) {
    if (n >= sw->w.size()) throw ConstraintError("apply_scq: starting weights do not cover level");
    for (std::size_t j = 0; j < sw->nodes.size(); ++j) {
      const std::size_t node = static_cast<std::size_t>(sw->nodes[j]);
      if (node >= f.values.size()) throw ConstraintError("apply_scq: starting node beyond grid");
      acc.add(sw->w[n][j] * f.values[node]);
    }
  }
  return std::pow(f.h, wt.mu) * acc.value();
}

OrderEstimate consistency_order(const GeneratingFunction& gf) {
  OrderEstimate est;
  const double floor_dev = 100.0 * std::numeric_limits<double>::epsilon();
  for (int e = 4; e <= 12; ++e) {
    const double h = std::ldexp(1.0, -e);
    const double v = std::pow(h, gf.mu) * std::exp(gf.theta * h) * gf.evaluate_at_exp(h);
    const double dev = std::fabs(v - 1.0);
    if (dev > floor_dev) {
      est.h.push_back(h);
      est.deviation.push_back(dev);
    }
  }
  const std::size_t m = est.h.size();
  if (m < 3) {
    est.order = kNaN;
    return est;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(est.h[i]);
    const double y = std::log(est.deviation[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / md;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::log(est.deviation[i]) - (icpt + slope * std::log(est.h[i]));
    ss += r * r;
  }
  est.order = slope;
  est.fit_residual = std::sqrt(ss / md);
  est.determinate = est.fit_residual < 0.25;
  return est;
}

ConditionOmegaReport condition_omega_check(const GeneratingFunction& gf) {
  ConditionOmegaReport rep;
  struct Root {
    std::complex<double> xi;
    double exponent;
  };
  std::vector<Root> on_circle;
  const auto& cache = gf.cache();
  for (std::size_t k = 0; k < gf.factors.size(); ++k) {
    for (const auto& r : cache[k].roots) {
      const double mod = std::abs(r);
      if (mod < 1.0 - 1e-10) {
        rep.pass = false;
        rep.interior_roots.push_back(r);
        std::ostringstream os;
        os << (gf.factors[k].power > 0 ? "zero" : "singularity") << " inside the unit disk at xi = "
           << r.real() << (r.imag() < 0 ? "-" : "+") << std::fabs(r.imag()) << "i (|xi| = " << mod
           << ")";
        rep.witnesses.push_back(os.str());
      } else if (mod <= 1.0 + 1e-10) {
        on_circle.push_back({r / mod, gf.factors[k].power});
      }
    }
  }
  std::vector<bool> used(on_circle.size(), false);
  for (std::size_t i = 0; i < on_circle.size(); ++i) {
    if (used[i]) continue;
    double e = 0.0;
    for (std::size_t j = i; j < on_circle.size(); ++j) {
      if (!used[j] && std::abs(on_circle[j].xi - on_circle[i].xi) < 1e-6) {
        used[j] = true;
        e += on_circle[j].exponent;
      }
    }
    const double alpha_j = -e;
    rep.unit_singularities.push_back({on_circle[i].xi, alpha_j});
    if (alpha_j > gf.mu + 1e-12) {
      rep.pass = false;
      std::ostringstream os;
      os << "unit-circle exponent alpha_j = " << alpha_j << " exceeds mu = " << gf.mu << " at xi = "
         << on_circle[i].xi.real() << (on_circle[i].xi.imag() < 0 ? "-" : "+")
         << std::fabs(on_circle[i].xi.imag()) << "i";
      rep.witnesses.push_back(os.str());
    }
  }
  return rep;
}

double rl_integral_exp_monomial(double mu, double beta, double x) {
  // sum_k Gamma(beta+k) / (k! Gamma(beta+k+mu)) x^(beta+k+mu-1)
  double term = gamma(beta) * rgamma(beta + mu) * std::pow(x, beta + mu - 1.0);
  Compensated acc;
  acc.add(term);
  // Ratio of consecutive terms, tracked through the Gamma ratios so that
  // poles of 1/Gamma(beta+k+mu) do not break the recurrence.
  double gb = gamma(beta);
  for (int k = 1; k < 400; ++k) {
    gb *= (beta + k - 1.0);
    double fact = std::lgamma(k + 1.0);
    const double r = rgamma(beta + k + mu);
    term = r == 0.0 ? 0.0 : gb * r * std::exp(-fact) * std::pow(x, beta + k + mu - 1.0);
    acc.add(term);
    if (k > 5 && std::fabs(term) < 1e-18 * std::fabs(acc.value())) break;
  }
  return acc.value();
}

std::vector<ConvergenceRow> empirical_convergence(const GeneratingFunction& gf, double beta,
                                                  bool with_correction,
                                                  const ConvergenceOptions& opt) {
  if (beta <= 0.0 && beta == std::floor(beta)) {
    throw ConstraintError("empirical_convergence: beta must not be a non-positive integer");
  }
  const double mu = gf.mu;
  const double exact = opt.exp_factor ? rl_integral_exp_monomial(mu, beta, 1.0)
                                      : rl_integral_monomial(mu, beta, 1.0);
  const std::size_t n_top = *std::max_element(opt.levels.begin(), opt.levels.end());
  const WeightTable wt = expand_weights(gf, n_top);

  std::vector<double> sigma;
  if (with_correction) {
    for (int q = 0; q <= gf.order - 1; ++q) sigma.push_back(beta - 1.0 + q);
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t n : opt.levels) {
    const double h = 1.0 / (static_cast<double>(n) - gf.theta);
    GridFunction f;
    f.h = h;
    f.values.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      const double t = static_cast<double>(j) * h;
      f.values[j] = mpow(t, beta - 1.0) * (opt.exp_factor ? std::exp(t) : 1.0);
    }
    double approx;
    WeightTable local = wt;
    local.omega.resize(n + 1);
    if (with_correction) {
      const StartingWeightSet sw = starting_weights(local, sigma, n);
      approx = apply_scq(local, f, n, &sw);
    } else {
      approx = apply_scq(local, f, n);
    }
    ConvergenceRow row;
    row.n = n;
    row.h = h;
    row.error = std::fabs(approx - exact);
    row.eoc = rows.empty() ? kNaN
                           : std::log(rows.back().error / row.error) / std::log(rows.back().h / h);
    rows.push_back(row);
  }
  return rows;
}

HomogeneityResult homogeneity_check(const GeneratingFunction& gf, double beta, double x, double h) {
  const double ratio = x / h;
  const long nl = std::lround(ratio);
  if (nl < 1 || std::fabs(ratio - static_cast<double>(nl)) > 1e-9 * ratio) {
    throw ConstraintError("homogeneity_check: x/h must be a positive integer");
  }
  const std::size_t n = static_cast<std::size_t>(nl);
  const double node = (static_cast<double>(n) - gf.theta) * h;
  if (!(node > 0.0)) throw ConstraintError("homogeneity_check: shifted node must be positive");
  const WeightTable wt = expand_weights(gf, n);

  auto error_at = [&](double step) {
    GridFunction f;
    f.h = step;
    f.values.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) f.values[j] = mpow(static_cast<double>(j) * step, beta - 1.0);
    const double at = (static_cast<double>(n) - gf.theta) * step;
    return apply_scq(wt, f, n) - rl_integral_monomial(gf.mu, beta, at);
  };

  HomogeneityResult r;
  r.node = node;
  r.lhs = error_at(h);
  r.rhs = std::pow(node, gf.mu + beta - 1.0) * error_at(h / node);
  r.residual = std::fabs(r.lhs - r.rhs);
  const double scale = std::fabs(rl_integral_monomial(gf.mu, beta, node));
  r.relative = r.residual / (scale > 0.0 ? scale : 1.0);
  return r;
}

StabilityTrend stability_trend(const WeightTable& wt) {
  const std::size_t n = wt.omega.size() - 1;
  StabilityTrend st;
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = std::fabs(wt.omega[k]) * std::pow(static_cast<double>(k), 1.0 - wt.mu);
    if (k <= n / 10) st.sup_previous = std::max(st.sup_previous, v);
    st.sup_last = std::max(st.sup_last, v);
  }
  st.variation = st.sup_previous > 0.0 ? (st.sup_last - st.sup_previous) / st.sup_previous : kNaN;
  return st;
}

}  // namespace scq
