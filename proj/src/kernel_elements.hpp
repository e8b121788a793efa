#pragma once

// Per-element bodies shared by the serial and OpenMP kernels so that both
// sum in the same order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "scq/kernels.hpp"

namespace scq::kernels::detail {

inline void neumaier(double& s, double& c, double x) {
  const double t = s + x;
  if (std::fabs(s) >= std::fabs(x)) {
    c += (s - t) + x;
  } else {
    c += (x - t) + s;
  }
  s = t;
}

inline double cauchy_element(const double* a, std::size_t da, const double* b, std::size_t db,
                             std::size_t k) {
  const std::size_t lo = k > db ? k - db : 0;
  const std::size_t hi = std::min(k, da);
  double s = 0.0;
  double c = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) neumaier(s, c, a[j] * b[k - j]);
  return s + c;
}

inline Winding winding_element(const std::vector<std::complex<double>>& num,
                               const std::vector<std::complex<double>>& den,
                               std::complex<double> z) {
  const std::size_t m = num.size();
  Winding w;
  w.min_abs = std::numeric_limits<double>::infinity();
  if (m == 0) return w;
  double total = 0.0;
  std::complex<double> prev = num[m - 1] - z * den[m - 1];
  std::size_t imin = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::complex<double> f = num[i] - z * den[i];
    const double a = std::abs(f);
    if (a < w.min_abs) {
      w.min_abs = a;
      imin = i;
    }
    const double step = std::arg(f / prev);
    w.max_step = std::max(w.max_step, std::fabs(step));
    total += step;
    prev = f;
  }
  w.winding = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  const std::size_t ip = (imin + 1) % m;
  const std::size_t im = (imin + m - 1) % m;
  const std::complex<double> fmin = num[imin] - z * den[imin];
  w.local_step = std::max(std::abs(num[ip] - z * den[ip] - fmin), std::abs(num[im] - z * den[im] - fmin));
  return w;
}

// Accumulates rows [i0, i1) of the history sum.
inline void history_block(const std::vector<double>& w, const std::vector<std::vector<double>>& v,
                          std::size_t n, double* h, std::size_t i0, std::size_t i1) {
  std::vector<double> s(i1 - i0, 0.0);
  std::vector<double> c(i1 - i0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = w[n - k];
    if (wk == 0.0) continue;
    const double* vk = v[k].data();
    for (std::size_t i = i0; i < i1; ++i) neumaier(s[i - i0], c[i - i0], wk * vk[i]);
  }
  for (std::size_t i = i0; i < i1; ++i) h[i] = s[i - i0] + c[i - i0];
}

constexpr std::size_t kHistoryBlock = 256;

}  // namespace scq::kernels::detail
