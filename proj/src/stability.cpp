#include "scq/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "scq/errors.hpp"
#include "scq/kernels.hpp"
#include "scq/special_functions.hpp"

namespace scq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergence = 1e12;
constexpr int kMaxRefineDepth = 40;

cplx theta_poly(const ThetaWeights& tw, cplx xi) {
  cplx acc = 0.0;
  for (auto it = tw.w.rbegin(); it != tw.w.rend(); ++it) acc = acc * xi + *it;
  return acc;
}

// numerator/denominator pair of F = num - z den for the scheme.
void num_den(const SchemeSpec& s, cplx xi, cplx& num, cplx& den) {
  const cplx om = s.gf.evaluate(xi);
  const cplx th = theta_poly(s.tw, xi);
  if (s.kind == Scheme::I) {
    num = om;
    den = th;
  } else {
    num = th;
    den = om;
  }
}

template <class T>
std::vector<T> run_recursion(const SchemeSpec& s, T z, T y0, std::size_t n, bool* diverged,
                             std::size_t* diverged_at) {
  const std::vector<double> om = expand_weights(s.gf, std::max<std::size_t>(n, 1)).omega;
  const std::vector<double>& th = s.tw.w;
  const double a = s.alpha;
  const double theta = s.gf.theta;
  const double gfac = rgamma(1.0 - a);
  std::vector<T> y;
  y.reserve(n + 1);
  y.push_back(y0);
  if (diverged) *diverged = false;
  for (std::size_t k = 1; k <= n; ++k) {
    T conv = 0.0;
    for (std::size_t j = 0; j < k; ++j) conv += om[k - j] * y[j];
    T interp = 0.0;
    for (std::size_t j = 1; j < th.size(); ++j) interp += th[j] * (j <= k ? y[k - j] : y0);
    T val;
    if (s.kind == Scheme::I) {
      const double node = static_cast<double>(k) - theta;
      const T forcing = node > 0.0 ? y0 * (gfac / std::pow(node, a)) : T(0.0);
      const T pivot = om[0] - z * th[0];
      if (pivot == T(0.0)) throw NumericalError("scalar recursion: zero pivot");
      val = (z * interp + forcing - conv) / pivot;
    } else {
      const T pivot = z * om[0] - th[0];
      if (pivot == T(0.0)) throw NumericalError("scalar recursion: zero pivot");
      val = (interp - z * conv) / pivot;
    }
    y.push_back(val);
    if (!(std::abs(val) <= kDivergence)) {
      if (diverged) *diverged = true;
      if (diverged_at) *diverged_at = k;
      break;
    }
  }
  return y;
}

}  // namespace

SchemeSpec make_scheme(Scheme kind, const GeneratingFunction& gf) {
  if (kind == Scheme::I && !(gf.mu < 0.0)) {
    throw ConstraintError("Scheme I needs a derivative generating function (mu < 0)");
  }
  if (kind == Scheme::II && !(gf.mu > 0.0)) {
    throw ConstraintError("Scheme II needs an integral generating function (mu > 0)");
  }
  SchemeSpec s;
  s.kind = kind;
  s.gf = gf;
  s.alpha = std::fabs(gf.mu);
  s.tw = theta_weights(gf.theta, std::max(gf.order, 1), true);
  return s;
}

StabilityLocus boundary_locus(const SchemeSpec& s, std::size_t m, double epsilon) {
  if (m < 256) throw ConstraintError("boundary_locus: need at least 256 samples");
  StabilityLocus loc;
  loc.kind = s.kind;
  loc.epsilon = epsilon;
  loc.radius = 1.0 - epsilon;
  loc.samples.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx xi = std::polar(loc.radius, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m));
    cplx num, den;
    num_den(s, xi, num, den);
    if (den == cplx(0.0) || !std::isfinite(std::abs(num / den))) {
      loc.skipped.push_back(k);
      continue;
    }
    loc.samples.push_back(num / den);
  }
  return loc;
}

RegionTester::RegionTester(const SchemeSpec& s, std::size_t m, double epsilon)
    : spec_(s), eps_(epsilon) {
  if (m < 256) throw ConstraintError("RegionTester: need at least 256 samples");
  sample(m, num_, den_);
}

void RegionTester::sample(std::size_t m, std::vector<cplx>& num, std::vector<cplx>& den) const {
  num.resize(m);
  den.resize(m);
  const double r = 1.0 - eps_;
  for (std::size_t k = 0; k < m; ++k) {
    const cplx xi = std::polar(r, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m));
    num_den(spec_, xi, num[k], den[k]);
  }
}

RegionResult RegionTester::finish(const kernels::Winding& w, cplx z) const {
  RegionResult r;
  r.winding = w.winding;
  r.min_abs = w.min_abs;
  r.boundary_adjacent = w.min_abs < 10.0 * w.local_step;
  if (w.max_step > 0.5 * kPi) {
    // Bisect every arc whose argument increment is too large to trust.
    const double rad = 1.0 - eps_;
    const std::size_t m = num_.size();
    auto f_at = [&](double phi) {
      cplx nu, de;
      num_den(spec_, std::polar(rad, phi), nu, de);
      return nu - z * de;
    };
    bool ok = true;
    std::function<double(double, cplx, double, cplx, int)> arc = [&](double pa, cplx fa, double pb,
                                                                      cplx fb, int depth) -> double {
      const double inc = std::arg(fb / fa);
      if (std::fabs(inc) <= 0.5 * kPi) return inc;
      if (depth >= kMaxRefineDepth) {
        ok = false;
        return inc;
      }
      const double pm = 0.5 * (pa + pb);
      const cplx fm = f_at(pm);
      return arc(pa, fa, pm, fm, depth + 1) + arc(pm, fm, pb, fb, depth + 1);
    };
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t k1 = (k + 1) % m;
      const cplx fa = num_[k] - z * den_[k];
      const cplx fb = num_[k1] - z * den_[k1];
      const double pa = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
      const double pb = 2.0 * kPi * static_cast<double>(k + 1) / static_cast<double>(m);
      total += arc(pa, fa, pb, fb, 0);
    }
    r.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));
    r.inconclusive = !ok;
  }
  r.in_region = r.winding == 0 && !r.inconclusive;
  return r;
}

RegionResult RegionTester::test(cplx z) const {
  const auto w = kernels::serial::winding_batch(num_, den_, {z});
  return finish(w[0], z);
}

std::vector<RegionResult> RegionTester::test_batch(const std::vector<cplx>& zs) const {
  const auto ws = kernels::parallel::winding_batch(num_, den_, zs);
  std::vector<RegionResult> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] = finish(ws[i], zs[i]);
  return out;
}

RegionResult in_region(const SchemeSpec& s, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ConstraintError("in_region: z must be finite");
  }
  return RegionTester(s).test(z);
}

ADeltaReport a_delta_classify(const SchemeSpec& s, double delta) {
  if (!(delta > 0.0) || !(delta < kPi)) throw ConstraintError("a_delta_classify: delta must lie in (0, pi)");
  ADeltaReport rep;
  rep.delta = delta;
  const int decades = static_cast<int>(std::lround(std::log10(rep.r_max / rep.r_min)));
  const int nr = decades * rep.per_decade + 1;
  std::vector<cplx> zs;
  zs.reserve(static_cast<std::size_t>(nr * rep.rays));
  for (int i = 0; i < nr; ++i) {
    const double r = rep.r_min * std::pow(10.0, static_cast<double>(i) / rep.per_decade);
    for (int k = 0; k < rep.rays; ++k) {
      const double frac = (2.0 * (k + 0.5) / rep.rays) - 1.0;  // strictly inside (-1, 1)
      zs.push_back(std::polar(r, kPi + delta * frac));
    }
  }
  const RegionTester tester(s);
  const auto res = tester.test_batch(zs);
  rep.samples = zs.size();
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (res[i].boundary_adjacent) ++rep.boundary_adjacent;
    if (res[i].inconclusive) ++rep.inconclusive;
    if (!res[i].in_region) {
      if (rep.failures == 0) rep.first_failure = zs[i];
      ++rep.failures;
    }
  }
  rep.stable = rep.failures == 0;
  return rep;
}

double max_stable_interval(const SchemeSpec& s) {
  const double r_min = 1e-3;
  const int per_decade = 25;
  const int nr = 9 * per_decade + 1;
  std::vector<cplx> zs;
  std::vector<double> rs;
  for (int i = 0; i < nr; ++i) {
    rs.push_back(r_min * std::pow(10.0, static_cast<double>(i) / per_decade));
    zs.emplace_back(-rs.back(), 0.0);
  }
  const RegionTester tester(s);
  const auto res = tester.test_batch(zs);
  std::size_t first_fail = res.size();
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (!res[i].in_region) {
      first_fail = i;
      break;
    }
  }
  if (first_fail == res.size()) return std::numeric_limits<double>::infinity();
  if (first_fail == 0) return 0.0;
  double lo = rs[first_fail - 1];
  double hi = rs[first_fail];
  while ((hi - lo) > 1e-6 * lo) {
    const double mid = 0.5 * (lo + hi);
    if (tester.test(cplx(-mid, 0.0)).in_region) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<cplx> recursion_run(const SchemeSpec& s, cplx z, cplx y0, std::size_t n) {
  return run_recursion<cplx>(s, z, y0, n, nullptr, nullptr);
}

RecursionResult scalar_recursion_run(const SchemeSpec& s, double lambda, double y0, double h,
                                     std::size_t n) {
  if (n < 1) throw ConstraintError("scalar_recursion_run: N must be >= 1");
  if (!(h > 0.0)) throw ConstraintError("scalar_recursion_run: h must be positive");
  const double z = lambda * std::pow(h, s.alpha);
  RecursionResult r;
  r.y = run_recursion<double>(s, z, y0, n, &r.diverged, &r.diverged_at);
  return r;
}

double reference_solution(double alpha, double lambda, double y0, double x) {
  if (x == 0.0) return y0;
  return y0 * mittag_leffler({alpha, 1.0}, lambda * std::pow(x, alpha));
}

}  // namespace scq
