#include "kernel_elements.hpp"

namespace scq::kernels::serial {

void cauchy_product(const double* a, std::size_t da, const double* b, std::size_t db, double* out,
                    std::size_t n) {
  for (std::size_t k = 0; k <= n; ++k) out[k] = detail::cauchy_element(a, da, b, db, k);
}

std::vector<Winding> winding_batch(const std::vector<std::complex<double>>& num,
                                   const std::vector<std::complex<double>>& den,
                                   const std::vector<std::complex<double>>& zs) {
  std::vector<Winding> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] = detail::winding_element(num, den, zs[i]);
  return out;
}

void history_sum(const std::vector<double>& w, const std::vector<std::vector<double>>& v,
                 std::size_t n, double* h, std::size_t dim) {
  for (std::size_t i0 = 0; i0 < dim; i0 += detail::kHistoryBlock) {
    detail::history_block(w, v, n, h, i0, std::min(dim, i0 + detail::kHistoryBlock));
  }
}

}  // namespace scq::kernels::serial
