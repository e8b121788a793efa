#include "scq/genfun.hpp"

#include <cmath>
#include <sstream>

#include "scq/errors.hpp"
#include "scq/polynomial.hpp"

namespace scq {

namespace {

constexpr double kIntegerTol = 1e-9;
constexpr double kDiskTol = 1e-10;

void fail(const std::string& msg) { throw ConstraintError(msg); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Polynomial in xi with the given coefficients in powers of (1 - xi).
std::vector<double> from_u_basis(const std::vector<double>& g) {
  const std::size_t n = g.empty() ? 0 : g.size() - 1;
  return rebase_to_one_minus_xi(Series(g, n)).coeffs();
}

PowerFactor one_minus_xi(double power) { return {{1.0, -1.0}, power}; }

// Cofactor of the Newton-Gregory type families must be zero-free in the
// open unit disk.
void require_zero_free(const std::vector<double>& poly, const std::string& who) {
  for (const auto& r : polynomial_roots(poly)) {
    if (std::abs(r) < 1.0 - kDiskTol) {
      fail(who + ": cofactor has a zero inside the unit disk at |xi| = " + fmt(std::abs(r)));
    }
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Trapezoidal: return "trapezoidal";
    case Family::BDFp: return "bdf";
    case Family::BTtheta: return "bt-theta";
    case Family::NewtonGregory: return "ng";
    case Family::BNtheta: return "bn-theta";
    case Family::ShiftedOfCQ: return "shifted-cq";
    case Family::ShiftedNewtonGregory: return "shifted-ng";
    case Family::WSGL: return "wsgl";
    case Family::LambdaShift: return "lambda-shift";
    case Family::GBDF2theta: return "gbdf2-theta";
    case Family::CentralDifference: return "central-difference";
  }
  return "unknown";
}

void GeneratingFunction::finalize() {
  cache_.clear();
  for (PowerFactor& f : factors) {
    while (f.poly.size() > 1 && f.poly.back() == 0.0) f.poly.pop_back();
    FactorCache c;
    c.p0 = f.poly.at(0);
    c.integer_power = f.power == std::round(f.power);
    if (!c.integer_power && !(c.p0 > 0.0)) {
      fail(name() + ": factor with non-integer power needs a positive value at xi = 0");
    }
    if (f.poly.size() > 1) c.roots = polynomial_roots(f.poly);
    c.u_poly = from_u_basis(f.poly);
    cache_.push_back(std::move(c));
  }
}

Series GeneratingFunction::expand(std::size_t n) const {
  Series acc = Series::one(n);
  for (const PowerFactor& f : factors) {
    Series base(f.poly, n);
    if (f.power == 1.0) {
      acc = acc * base;
    } else {
      acc = acc * real_pow(base, f.power);
    }
  }
  return acc;
}

std::complex<double> GeneratingFunction::evaluate(std::complex<double> xi) const {
  std::complex<double> acc = 1.0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const PowerFactor& f = factors[k];
    const FactorCache& c = cache_[k];
    if (c.integer_power) {
      const std::complex<double> v = horner(f.poly, xi);
      const long e = std::lround(f.power);
      std::complex<double> p = 1.0;
      const std::complex<double> b = e >= 0 ? v : 1.0 / v;
      for (long i = 0; i < std::labs(e); ++i) p *= b;
      acc *= p;
    } else {
      std::complex<double> logsum = std::log(c.p0);
      for (const auto& r : c.roots) logsum += std::log(1.0 - xi / r);
      acc *= std::exp(f.power * logsum);
    }
  }
  return acc;
}

double GeneratingFunction::evaluate_at_exp(double h) const {
  const double u = -std::expm1(-h);
  double acc = 1.0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const double v = horner(cache_[k].u_poly, u);
    if (cache_[k].integer_power) {
      acc *= std::pow(v, std::round(factors[k].power));
    } else {
      if (!(v > 0.0)) throw NumericalError(name() + ": non-positive factor on the real axis");
      acc *= std::pow(v, factors[k].power);
    }
  }
  return acc;
}

std::string GeneratingFunction::name() const {
  std::string s = family_name(family);
  if (family == Family::ShiftedOfCQ) s += "(" + family_name(params.base) + ")";
  return s;
}

std::vector<double> shift_coefficients(double theta, int p) {
  if (p < 1) fail("shift_coefficients: p must be >= 1");
  std::vector<double> g(static_cast<std::size_t>(p));
  g[0] = 1.0;
  for (int i = 1; i < p; ++i) g[i] = g[i - 1] * (static_cast<double>(i - 1) - theta) / i;
  return g;
}

std::vector<double> shifted_ng_coefficients(int p, double mu, double theta) {
  if (p < 1) fail("shifted_ng_coefficients: p must be >= 1");
  const std::size_t n = static_cast<std::size_t>(p - 1);
  Series log_ratio(n);
  for (std::size_t k = 0; k <= n; ++k) log_ratio[k] = 1.0 / static_cast<double>(k + 1);
  const Series g = real_pow(log_ratio, -mu) * real_pow(Series({1.0, -1.0}, n), theta);
  return {g.coeffs().begin(), g.coeffs().end()};
}

double superconvergent_theta_order3(double mu) {
  if (mu > 3.0) fail("superconvergent_theta_order3: mu must be <= 3, got " + fmt(mu));
  return 0.5 * (1.0 - mu) - 0.5 * std::sqrt(1.0 - mu / 3.0);
}

double lambda_shift_theta(double mu, int m) {
  const double md = m;
  const double rad = md * md - mu / 3.0;
  if (m < 1 || rad < 0.0) fail("lambda_shift_theta: no real theta for m = " + std::to_string(m));
  return 0.5 * (md - mu) - 0.5 * std::sqrt(rad);
}

GeneratingFunction make_trapezoidal(double mu, bool unsafe) {
  if (mu < 0.0 && !unsafe) fail("trapezoidal: requires mu >= 0, got " + fmt(mu));
  GeneratingFunction g;
  g.family = Family::Trapezoidal;
  g.mu = mu;
  g.order = 2;
  g.unsafe = unsafe;
  g.factors = {{{1.0, 1.0}, mu}, {{2.0, -2.0}, -mu}};
  g.finalize();
  return g;
}

GeneratingFunction make_bdf(int p, double mu, bool unsafe) {
  if (p < 1 || p > 6) fail("bdf: step count must lie in 1..6, got " + std::to_string(p));
  GeneratingFunction g;
  g.family = Family::BDFp;
  g.mu = mu;
  g.order = p;
  g.unsafe = unsafe;
  g.params.bdf_p = p;
  // sum_{i=1}^p (1-xi)^i / i = (1-xi) * sum_{i<p} (1-xi)^i / (i+1)
  std::vector<double> cof(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) cof[i] = 1.0 / (i + 1);
  g.factors = {one_minus_xi(-mu)};
  if (p > 1) g.factors.push_back({from_u_basis(cof), -mu});
  g.finalize();
  return g;
}

GeneratingFunction make_bt_theta(double method_theta, double mu, bool unsafe) {
  const double t = method_theta;
  const bool ok = mu < 0.0 ? t < 0.5 : t <= 0.5;
  if (!ok && !unsafe) fail("bt-theta: parameter " + fmt(t) + " out of range for mu = " + fmt(mu));
  GeneratingFunction g;
  g.family = Family::BTtheta;
  g.mu = mu;
  g.order = 2;
  g.unsafe = unsafe;
  g.params.method_theta = t;
  g.factors = {{{1.0 - t, t}, mu}, one_minus_xi(-mu), {{1.5 - t, -(0.5 - t)}, -mu}};
  g.finalize();
  return g;
}

GeneratingFunction make_bn_theta(double method_theta, double mu, bool unsafe) {
  const double t = method_theta;
  if ((t > 1.0 || mu * t > 0.5) && !unsafe) {
    fail("bn-theta: requires theta <= 1 and mu*theta <= 1/2, got theta = " + fmt(t) +
         ", mu = " + fmt(mu));
  }
  GeneratingFunction g;
  g.family = Family::BNtheta;
  g.mu = mu;
  g.order = 2;
  g.unsafe = unsafe;
  g.params.method_theta = t;
  g.factors = {{{1.0 - mu * t, mu * t}, 1.0}, one_minus_xi(-mu), {{1.5 - t, -(0.5 - t)}, -mu}};
  g.finalize();
  return g;
}

GeneratingFunction make_newton_gregory(int p, double mu) {
  GeneratingFunction g = make_shifted_newton_gregory(p, mu, 0.0, true);
  g.family = Family::NewtonGregory;
  g.unsafe = false;
  return g;
}

GeneratingFunction shift_of_cq(const GeneratingFunction& base, double theta) {
  if (base.theta != 0.0) fail("shift_of_cq: base must be an unshifted CQ");
  GeneratingFunction g = base;
  g.family = Family::ShiftedOfCQ;
  g.params.base = base.family;
  g.theta = theta;
  if (theta != 0.0) {
    g.params.gamma = shift_coefficients(theta, base.order);
    g.factors.push_back({from_u_basis(g.params.gamma), 1.0});
    g.finalize();
  } else {
    g.params.gamma = {1.0};
  }
  return g;
}

GeneratingFunction make_shifted_newton_gregory(int p, double mu, double theta, bool unsafe) {
  if (p < 1) fail("shifted-ng: order must be >= 1");
  GeneratingFunction g;
  g.family = Family::ShiftedNewtonGregory;
  g.mu = mu;
  g.theta = theta;
  g.order = p;
  g.unsafe = unsafe;
  g.params.gamma = shifted_ng_coefficients(p, mu, theta);
  const std::vector<double> cof = from_u_basis(g.params.gamma);
  if (!unsafe) {
    if (p == 2 && theta > 0.5 * (1.0 - mu)) {
      fail("shifted-ng: order 2 requires theta <= (1 - mu)/2 = " + fmt(0.5 * (1.0 - mu)) +
           ", got " + fmt(theta));
    }
    if (p > 2) require_zero_free(cof, "shifted-ng");
  }
  g.factors = {one_minus_xi(-mu)};
  if (p > 1) g.factors.push_back({cof, 1.0});
  g.finalize();
  return g;
}

GeneratingFunction make_wsgl(int p, int q, double mu, bool unsafe) {
  if (p <= q) fail("wsgl: requires p > q");
  if (p + q + mu > 0.0 && !unsafe) {
    fail("wsgl: requires p + q + mu <= 0, got " + fmt(p + q + mu));
  }
  const double d = 2.0 * (p - q);
  GeneratingFunction g;
  g.family = Family::WSGL;
  g.mu = mu;
  g.theta = p;
  g.order = 2;
  g.unsafe = unsafe;
  g.params.wsgl_p = p;
  g.params.wsgl_q = q;
  g.params.lambda1 = (-mu - 2.0 * q) / d;
  g.params.lambda2 = (2.0 * p + mu) / d;
  std::vector<double> cof(static_cast<std::size_t>(p - q) + 1, 0.0);
  cof.front() = g.params.lambda1;
  cof.back() = g.params.lambda2;
  g.factors = {one_minus_xi(-mu), {cof, 1.0}};
  g.finalize();
  return g;
}

GeneratingFunction make_lambda_shift(double mu, double theta, bool unsafe) {
  const double s = mu + 2.0 * theta;
  if (s == 0.0) fail("lambda-shift: mu + 2 theta must be nonzero");
  const double m_exact = 0.5 * s + mu / (6.0 * s);
  const double m_round = std::round(m_exact);
  if (std::fabs(m_exact - m_round) > kIntegerTol || m_round < 1.0) {
    fail("lambda-shift: exponent m = " + fmt(m_exact) + " is not a positive integer");
  }
  const int m = static_cast<int>(m_round);
  const double l2 = s / (2.0 * m);
  const double l1 = 1.0 - l2;
  if (l1 < std::fabs(l2) && !unsafe) {
    fail("lambda-shift: requires lambda1 >= |lambda2|, got " + fmt(l1) + " and " + fmt(l2));
  }
  GeneratingFunction g;
  g.family = Family::LambdaShift;
  g.mu = mu;
  g.theta = theta;
  g.order = 3;
  g.unsafe = unsafe;
  g.params.m = m;
  g.params.m_exact = m_exact;
  g.params.lambda1 = l1;
  g.params.lambda2 = l2;
  std::vector<double> cof(static_cast<std::size_t>(m) + 1, 0.0);
  cof.front() = l1;
  cof.back() = l2;
  g.factors = {one_minus_xi(-mu), {cof, 1.0}};
  g.finalize();
  return g;
}

GeneratingFunction make_gbdf2_theta(double mu, double theta, bool unsafe) {
  if (mu == 0.0) fail("gbdf2-theta: mu must be nonzero");
  if (mu * (mu + theta) < 0.0 && !unsafe) {
    fail("gbdf2-theta: requires mu (mu + theta) >= 0, got " + fmt(mu * (mu + theta)));
  }
  GeneratingFunction g;
  g.family = Family::GBDF2theta;
  g.mu = mu;
  g.theta = theta;
  g.order = 2;
  g.unsafe = unsafe;
  // The quadratic vanishes at xi = 1; split off that root explicitly.
  const double c2 = (mu + 2.0 * theta) / (2.0 * mu);
  const double c0 = (3.0 * mu + 2.0 * theta) / (2.0 * mu);
  g.factors = {one_minus_xi(-mu), {{c0, -c2}, -mu}};
  g.finalize();
  return g;
}

GeneratingFunction make_central_difference(double mu) {
  GeneratingFunction g;
  g.family = Family::CentralDifference;
  g.mu = mu;
  g.theta = -mu;
  g.order = 2;
  g.factors = {{{2.0}, mu}, one_minus_xi(-mu), {{1.0, 1.0}, -mu}};
  g.finalize();
  return g;
}

}  // namespace scq
