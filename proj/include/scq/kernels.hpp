#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Hot loops in two flavours. The serial versions are the reference the
// tests compare against; the parallel versions are OpenMP ports with the
// same per-element summation order, so both produce identical bits.
namespace scq::kernels {

struct Winding {
  int winding = 0;
  double min_abs = 0.0;     // min |F| over the samples
  double local_step = 0.0;  // |F| spacing next to that minimum
  double max_step = 0.0;    // largest |arg increment| between samples
};

namespace serial {

// out[k] = sum_{j} a[j] b[k-j] for k <= n, with deg(a) = da, deg(b) = db.
void cauchy_product(const double* a, std::size_t da, const double* b, std::size_t db, double* out,
                    std::size_t n);

// Winding number around 0 of F_i = num - z_i * den along closed sample
// arrays num/den (length m) for each z in zs.
std::vector<Winding> winding_batch(const std::vector<std::complex<double>>& num,
                                   const std::vector<std::complex<double>>& den,
                                   const std::vector<std::complex<double>>& zs);

// h[i] = sum_{k=0}^{n-1} w[n-k] * v[k][i] for i < dim.
void history_sum(const std::vector<double>& w, const std::vector<std::vector<double>>& v,
                 std::size_t n, double* h, std::size_t dim);

}  // namespace serial

namespace parallel {

void cauchy_product(const double* a, std::size_t da, const double* b, std::size_t db, double* out,
                    std::size_t n);

std::vector<Winding> winding_batch(const std::vector<std::complex<double>>& num,
                                   const std::vector<std::complex<double>>& den,
                                   const std::vector<std::complex<double>>& zs);

void history_sum(const std::vector<double>& w, const std::vector<std::vector<double>>& v,
                 std::size_t n, double* h, std::size_t dim);

}  // namespace parallel

}  // namespace scq::kernels
