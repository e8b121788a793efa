#include "scq/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scq/errors.hpp"

namespace scq {

cplx horner(const std::vector<double>& c, cplx x) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

// p and p' at x in one pass.
void horner2(const std::vector<double>& c, cplx x, cplx& p, cplx& dp) {
  p = 0.0;
  dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
}

std::vector<cplx> quadratic_roots(double c0, double c1, double c2) {
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc >= 0.0) {
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0.0) return {cplx(0.0), cplx(0.0)};
    return {cplx(q / c2), cplx(c0 / q)};
  }
  const double re = -c1 / (2.0 * c2);
  const double im = std::sqrt(-disc) / (2.0 * std::fabs(c2));
  return {cplx(re, im), cplx(re, -im)};
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw ConstraintError("polynomial_roots: zero polynomial");

  std::vector<cplx> roots;
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && c[zeros] == 0.0) ++zeros;
  roots.assign(zeros, cplx(0.0));
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));

  const std::size_t deg = c.size() - 1;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.emplace_back(-c[0] / c[1]);
    return roots;
  }
  if (deg == 2) {
    for (const cplx& r : quadratic_roots(c[0], c[1], c[2])) roots.push_back(r);
    return roots;
  }

  // Initial guesses on a circle whose radius is the Cauchy-type bound.
  double radius = 0.0;
  for (std::size_t k = 0; k < deg; ++k) {
    radius = std::max(radius, std::pow(std::fabs(c[k] / c[deg]), 1.0 / static_cast<double>(deg - k)));
  }
  radius = std::max(radius, 1e-3);
  std::vector<cplx> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double ang = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(deg) + 0.4;
    z[k] = std::polar(radius, ang);
  }

  for (int iter = 0; iter < 500; ++iter) {
    double max_corr = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      cplx p, dp;
      horner2(c, z[k], p, dp);
      if (p == cplx(0.0)) continue;
      const cplx ratio = p / dp;
      cplx sum = 0.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      const cplx corr = ratio / (1.0 - ratio * sum);
      z[k] -= corr;
      max_corr = std::max(max_corr, std::abs(corr) / std::max(1.0, std::abs(z[k])));
    }
    if (max_corr < 1e-15) break;
  }

  for (cplx& r : z) {
    for (int it = 0; it < 3; ++it) {
      cplx p, dp;
      horner2(c, r, p, dp);
      if (dp == cplx(0.0) || p == cplx(0.0)) break;
      const cplx step = p / dp;
      if (!(std::abs(step) < 1e-6 * std::max(1.0, std::abs(r)))) break;
      r -= step;
    }
    if (std::fabs(r.imag()) < 1e-14 * std::max(1.0, std::abs(r))) r = cplx(r.real(), 0.0);
    roots.push_back(r);
  }
  return roots;
}

}  // namespace scq
