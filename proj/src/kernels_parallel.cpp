#include <omp.h>

#include "kernel_elements.hpp"

namespace scq::kernels::parallel {

namespace {
// Below these sizes the fork/join overhead dominates.
constexpr std::size_t kMinCauchy = 512;
constexpr std::size_t kMinWinding = 16;
}  // namespace

void cauchy_product(const double* a, std::size_t da, const double* b, std::size_t db, double* out,
                    std::size_t n) {
  const long long len = static_cast<long long>(n) + 1;
#pragma omp parallel for schedule(dynamic, 64) if (n >= kMinCauchy && (da + 1) * (db + 1) > 4096)
  for (long long k = 0; k < len; ++k) {
    out[k] = detail::cauchy_element(a, da, b, db, static_cast<std::size_t>(k));
  }
}

std::vector<Winding> winding_batch(const std::vector<std::complex<double>>& num,
                                   const std::vector<std::complex<double>>& den,
                                   const std::vector<std::complex<double>>& zs) {
  std::vector<Winding> out(zs.size());
  const long long cnt = static_cast<long long>(zs.size());
#pragma omp parallel for schedule(dynamic, 4) if (zs.size() >= kMinWinding)
  for (long long i = 0; i < cnt; ++i) out[i] = detail::winding_element(num, den, zs[i]);
  return out;
}

void history_sum(const std::vector<double>& w, const std::vector<std::vector<double>>& v,
                 std::size_t n, double* h, std::size_t dim) {
  const long long blocks =
      static_cast<long long>((dim + detail::kHistoryBlock - 1) / detail::kHistoryBlock);
#pragma omp parallel for schedule(static) if (blocks > 1 && n > 8)
  for (long long b = 0; b < blocks; ++b) {
    const std::size_t i0 = static_cast<std::size_t>(b) * detail::kHistoryBlock;
    detail::history_block(w, v, n, h, i0, std::min(dim, i0 + detail::kHistoryBlock));
  }
}

}  // namespace scq::kernels::parallel
