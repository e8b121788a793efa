#include "scq/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "scq/dense.hpp"
#include "scq/errors.hpp"
#include "scq/kernels.hpp"
#include "scq/power_series.hpp"
#include "scq/special_functions.hpp"

namespace scq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

using Block = std::vector<double>;  // s x s, row-major

Block block_combo(double m, double k, const std::vector<double>& a, const std::vector<double>& b) {
  Block r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * m + b[i] * k;
  return r;
}

// Y = X * B for s x s blocks.
Block mul(const Block& x, const Block& b, std::size_t s) {
  Block r(s * s, 0.0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t j = 0; j < s; ++j) r[i * s + j] += x[i * s + k] * b[k * s + j];
  return r;
}

std::vector<double> mulv(const Block& x, const std::vector<double>& v, std::size_t s) {
  std::vector<double> r(s, 0.0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) r[i] += x[i * s + k] * v[k];
  return r;
}

// Block tridiagonal solve for the coupled starting levels. Row i of the
// spatial system couples levels through blocks
//   L = a * M_sub + b * K_sub, D = a * M_diag + b * K_diag, U = a * M_sup + b * K_sup
// where a, b are the s x s level-coupling coefficients.
std::vector<std::vector<double>> solve_coupled(const Block& a, const Block& b, const Tridiagonal& mm,
                                               const Tridiagonal& kk,
                                               const std::vector<std::vector<double>>& rhs,
                                               std::size_t s) {
  const std::size_t d = mm.size();
  const Block lo = block_combo(mm.sub[0], kk.sub[0], a, b);
  const Block di = block_combo(mm.diag[0], kk.diag[0], a, b);
  const Block up = block_combo(mm.sup[0], kk.sup[0], a, b);
  // Uniform mesh: the blocks are the same on every row.
  std::vector<Block> cmod(d);
  std::vector<std::vector<double>> rmod(d);
  for (std::size_t i = 0; i < d; ++i) {
    Block piv = di;
    std::vector<double> r(s);
    for (std::size_t l = 0; l < s; ++l) r[l] = rhs[l][i];
    if (i > 0) {
      const Block lc = mul(lo, cmod[i - 1], s);
      for (std::size_t q = 0; q < s * s; ++q) piv[q] -= lc[q];
      const std::vector<double> lr = mulv(lo, rmod[i - 1], s);
      for (std::size_t l = 0; l < s; ++l) r[l] -= lr[l];
    }
    const DenseLU lu(piv, s);
    rmod[i] = lu.solve(r);
    Block c(s * s);
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<double> col(s);
      for (std::size_t l = 0; l < s; ++l) col[l] = up[l * s + j];
      const std::vector<double> x = lu.solve(col);
      for (std::size_t l = 0; l < s; ++l) c[l * s + j] = x[l];
    }
    cmod[i] = std::move(c);
  }
  std::vector<std::vector<double>> x(d);
  for (std::size_t i = d; i-- > 0;) {
    x[i] = rmod[i];
    if (i + 1 < d) {
      const std::vector<double> cx = mulv(cmod[i], x[i + 1], s);
      for (std::size_t l = 0; l < s; ++l) x[i][l] -= cx[l];
    }
  }
  std::vector<std::vector<double>> out(s, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < s; ++l) out[l][i] = x[i][l];
  return out;
}

double mass_norm(const Tridiagonal& mm, const std::vector<double>& e) {
  const std::vector<double> me = mm.apply(e);
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * me[i];
  return std::sqrt(std::max(0.0, s));
}

void check_theta(double alpha, double theta, bool unsafe) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConstraintError("alpha must lie in (0, 1), got " + fmt(alpha));
  const auto [lo, hi] = theta_range(alpha);
  if (!unsafe && (theta < lo - 1e-15 || theta > hi + 1e-15)) {
    throw ConstraintError("theta = " + fmt(theta) + " outside [" + fmt(lo) + ", " + fmt(hi) +
                          "] for alpha = " + fmt(alpha));
  }
}

}  // namespace

std::pair<double, double> theta_range(double alpha) {
  return {std::max(0.0, alpha / 2.0 - (1.0 - alpha) / (1.0 + alpha)), alpha / 2.0};
}

TFDEProblem manufactured_problem(double alpha, double theta, std::size_t n, std::size_t m) {
  TFDEProblem p;
  p.alpha = alpha;
  p.theta = theta;
  p.n = n;
  p.m = m;
  const double pi = std::numbers::pi;
  const double g1 = gamma(1.0 + alpha);
  const double g2 = 2.0 * alpha * gamma(2.0 * alpha) / gamma(alpha + 1.0);
  const double g3 = 6.0 / gamma(4.0 - alpha);
  auto amp = [alpha](double t) { return 1.0 + std::pow(t, alpha) + std::pow(t, 2.0 * alpha) + t * t * t; };
  p.exact = [amp, pi](double x, double t) { return amp(t) * std::sin(2.0 * pi * x); };
  p.u0 = [pi](double x) { return std::sin(2.0 * pi * x); };
  p.g = [=](double x, double t) {
    const double bracket = g1 + 4.0 * pi * pi * amp(t) + g2 * std::pow(t, alpha) + g3 * std::pow(t, 3.0 - alpha);
    return std::sin(2.0 * pi * x) * bracket;
  };
  return p;
}

WeightTable scheme_weights(double alpha, double theta, std::size_t n, bool unsafe) {
  check_theta(alpha, theta, unsafe);
  const Series kappa = real_pow(Series({1.0, -1.0}, n), alpha);
  const double c0 = 1.0 + alpha / 2.0 - theta;
  const double c1 = theta - alpha / 2.0;
  WeightTable wt;
  wt.mu = -alpha;
  wt.theta = theta;
  wt.p = 2;
  wt.omega.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) wt.omega[k] = c0 * kappa[k] + (k > 0 ? c1 * kappa[k - 1] : 0.0);
  return wt;
}

GronwallKernels gronwall_kernels(double alpha, double theta, double tau, std::size_t n) {
  const WeightTable wt = scheme_weights(alpha, theta, n);
  GronwallKernels g;
  g.tau = tau;
  g.alpha = alpha;
  const double ta = std::pow(tau, -alpha);
  g.a.resize(n + 1);
  g.theta.resize(n + 1);
  double s = 0.0, c = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double x = wt.omega[k];
    const double t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
    const double partial = s + c;
    g.a[k] = ta * partial;
    const double kd = static_cast<double>(k);
    g.theta[k] = (std::pow(kd + 1.0, 1.0 - alpha) - std::pow(kd, 1.0 - alpha)) / partial;
  }
  const Series inv = inverse(Series(wt.omega, n));
  g.p.resize(n + 1);
  const double tpa = std::pow(tau, alpha);
  for (std::size_t k = 0; k <= n; ++k) g.p[k] = tpa * inv[k];
  g.pi_a = *std::max_element(g.theta.begin(), g.theta.end()) * rgamma(2.0 - alpha);
  return g;
}

double kernel_identity_defect(const GronwallKernels& k) {
  double worst = 0.0;
  const std::size_t n = k.a.size() - 1;
  for (std::size_t m = 0; m <= n; ++m) {
    double s = 0.0, c = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      const double x = k.p[m - j] * k.a[j];
      const double t = s + x;
      c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
      s = t;
    }
    worst = std::max(worst, std::fabs(s + c - 1.0));
  }
  return worst;
}

double gronwall_step_bound(const GronwallKernels& k) {
  const double lambda = 1.0;
  return std::pow(2.0 * k.pi_a * gamma(2.0 - k.alpha) * lambda, -1.0 / k.alpha);
}

PDESolution solve(const TFDEProblem& p, const std::vector<double>& sigma) {
  check_theta(p.alpha, p.theta, p.unsafe_theta);
  if (p.n < 1) throw ConstraintError("pde solve: need N >= 1");
  if (!p.g || !p.u0) throw ConstraintError("pde solve: source and initial data required");
  const Mesh1D mesh(p.m);
  const std::size_t d = mesh.interior();
  const std::size_t n = p.n;
  const double tau = p.t_end / static_cast<double>(n);
  const double ta = std::pow(tau, -p.alpha);
  const double th = p.theta;

  const Tridiagonal mm = assemble_mass(mesh);
  const Tridiagonal kk = assemble_stiffness(mesh);
  const WeightTable wt = scheme_weights(p.alpha, th, n, p.unsafe_theta);
  const std::vector<double>& om = wt.omega;
  const ThetaWeights tw = theta_weights(th, 2, true);

  const std::vector<double> u0h = interpolate(mesh, p.u0);
  const std::vector<double> ku0 = kk.apply(u0h);

  StartingWeightSet sw, sw0;
  std::size_t coupled = 0;
  const bool corrected = !sigma.empty();
  if (corrected) {
    sw = starting_weights(wt, sigma, n);
    sw0 = starting_weights(as_weight_table(tw), sigma, n, CorrectionTarget::Interpolation);
    coupled = static_cast<std::size_t>(*std::max_element(sw.nodes.begin(), sw.nodes.end()));
    if (coupled > n) throw ConstraintError("pde solve: fewer time steps than starting nodes");
  }

  auto load_at = [&](std::size_t lvl) {
    const double t = (static_cast<double>(lvl) - th) * tau;
    std::vector<double> f = load_vector(mesh, [&](double x) { return p.g(x, t); });
    for (std::size_t i = 0; i < d; ++i) f[i] -= ku0[i];
    return f;
  };

  std::vector<std::vector<double>> v(n + 1, std::vector<double>(d, 0.0));

  if (coupled > 0) {
    const std::size_t s = coupled;
    Block a(s * s, 0.0), b(s * s, 0.0);
    for (std::size_t r = 1; r <= s; ++r) {
      for (std::size_t k = 1; k <= s; ++k) {
        double av = k <= r ? ta * om[r - k] : 0.0;
        double bv = (k <= r && r - k < tw.w.size()) ? tw.w[r - k] : 0.0;
        for (std::size_t j = 0; j < sw.nodes.size(); ++j) {
          if (static_cast<std::size_t>(sw.nodes[j]) == k) {
            av += ta * sw.w[r][j];
            bv += sw0.w[r][j];
          }
        }
        a[(r - 1) * s + (k - 1)] = av;
        b[(r - 1) * s + (k - 1)] = bv;
      }
    }
    std::vector<std::vector<double>> rhs(s);
    for (std::size_t r = 1; r <= s; ++r) rhs[r - 1] = load_at(r);
    const auto x = solve_coupled(a, b, mm, kk, rhs, s);
    for (std::size_t r = 1; r <= s; ++r) v[r] = x[r - 1];
  }

  const TridiagonalFactor step(combine(ta * om[0], mm, 1.0 - th, kk));
  std::vector<double> hist(d), mass_part(d), stiff_part(d);
  for (std::size_t lvl = coupled + 1; lvl <= n; ++lvl) {
    kernels::parallel::history_sum(om, v, lvl, hist.data(), d);
    for (std::size_t i = 0; i < d; ++i) {
      mass_part[i] = hist[i];
      stiff_part[i] = th * v[lvl - 1][i];
    }
    if (corrected) {
      for (std::size_t j = 0; j < sw.nodes.size(); ++j) {
        const std::vector<double>& vj = v[static_cast<std::size_t>(sw.nodes[j])];
        const double wc = sw.w[lvl][j];
        const double wi = sw0.w[lvl][j];
        for (std::size_t i = 0; i < d; ++i) {
          mass_part[i] += wc * vj[i];
          stiff_part[i] += wi * vj[i];
        }
      }
    }
    std::vector<double> rhs = load_at(lvl);
    const std::vector<double> mp = mm.apply(mass_part);
    const std::vector<double> kp = kk.apply(stiff_part);
    for (std::size_t i = 0; i < d; ++i) rhs[i] -= ta * mp[i] + kp[i];
    v[lvl] = step.solve(rhs);
  }

  PDESolution sol;
  sol.t.resize(n + 1);
  sol.u.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    sol.t[k] = static_cast<double>(k) * tau;
    sol.u[k].resize(d);
    for (std::size_t i = 0; i < d; ++i) sol.u[k][i] = v[k][i] + u0h[i];
  }
  if (p.exact) {
    sol.err_l2.resize(n + 1);
    sol.err_nodal.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = sol.t[k];
      sol.err_l2[k] = l2_error(mesh, sol.u[k], [&](double x) { return p.exact(x, t); });
      std::vector<double> e = interpolate(mesh, [&](double x) { return p.exact(x, t); });
      for (std::size_t i = 0; i < d; ++i) e[i] -= sol.u[k][i];
      sol.err_nodal[k] = mass_norm(mm, e);
    }
    sol.max_err_l2 = *std::max_element(sol.err_l2.begin(), sol.err_l2.end());
    sol.max_err_nodal = *std::max_element(sol.err_nodal.begin(), sol.err_nodal.end());
  }
  const GronwallKernels gk = gronwall_kernels(p.alpha, th, tau, std::min<std::size_t>(n, 4096));
  sol.analysis_valid = tau <= gronwall_step_bound(gk);
  return sol;
}

std::vector<StudyRow> convergence_study(const StudyOptions& opt) {
  if (opt.ladder < 3) throw ConstraintError("convergence_study: need a ladder of at least 3 steps");
  struct Job {
    std::size_t c;
    int level;
    bool corrected;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < opt.cases.size(); ++c) {
    check_theta(opt.cases[c].first, opt.cases[c].second, false);
    for (int l = 0; l < opt.ladder; ++l) {
      jobs.push_back({c, l, true});
      if (opt.uncorrected) jobs.push_back({c, l, false});
    }
  }
  std::vector<double> err(jobs.size(), kNaN);
  std::vector<double> taus(jobs.size()), hs(jobs.size());
  const long long nj = static_cast<long long>(jobs.size());
  // Independent cases; each writes only its own slot.
#pragma omp parallel for schedule(dynamic, 1)
  for (long long j = 0; j < nj; ++j) {
    const Job& job = jobs[j];
    const auto [alpha, theta] = opt.cases[job.c];
    const std::size_t var = opt.base << job.level;
    const std::size_t n = opt.vary == Vary::Time ? var : opt.fixed;
    const std::size_t m = opt.vary == Vary::Time ? opt.fixed : var;
    const TFDEProblem prob = manufactured_problem(alpha, theta, n, m);
    std::vector<double> sigma = opt.sigma;
    if (sigma.empty()) sigma = {alpha, 2.0 * alpha};
    const PDESolution sol = solve(prob, job.corrected ? sigma : std::vector<double>{});
    err[j] = opt.norm == ErrorNorm::L2 ? sol.max_err_l2 : sol.max_err_nodal;
    taus[j] = 1.0 / static_cast<double>(n);
    hs[j] = 1.0 / static_cast<double>(m);
  }

  std::vector<StudyRow> rows;
  for (std::size_t c = 0; c < opt.cases.size(); ++c) {
    for (int l = 0; l < opt.ladder; ++l) {
      StudyRow r;
      r.alpha = opt.cases[c].first;
      r.theta = opt.cases[c].second;
      r.eo = kNaN;
      r.rate_o = kNaN;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].c != c || jobs[j].level != l) continue;
        r.tau = taus[j];
        r.h = hs[j];
        if (jobs[j].corrected) {
          r.ec = err[j];
        } else {
          r.eo = err[j];
        }
      }
      if (l == 0) {
        r.rate_c = kNaN;
      } else {
        const StudyRow& prev = rows.back();
        r.rate_c = std::log2(prev.ec / r.ec);
        if (opt.uncorrected) r.rate_o = std::log2(prev.eo / r.eo);
      }
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace scq
