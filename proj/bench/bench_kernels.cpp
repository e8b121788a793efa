// Serial reference kernels against their OpenMP ports.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "scq/kernels.hpp"

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

template <bool Parallel>
void cauchy(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  const auto a = random_vec(n + 1, 1), b = random_vec(n + 1, 2);
  std::vector<double> out(n + 1);
  for (auto _ : st) {
    if constexpr (Parallel) {
      scq::kernels::parallel::cauchy_product(a.data(), n, b.data(), n, out.data(), n);
    } else {
      scq::kernels::serial::cauchy_product(a.data(), n, b.data(), n, out.data(), n);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void winding(benchmark::State& st) {
  const std::size_t m = 4096;
  const std::size_t nz = static_cast<std::size_t>(st.range(0));
  std::vector<std::complex<double>> num(m), den(m), zs;
  for (std::size_t k = 0; k < m; ++k) {
    const auto xi = std::polar(0.999, 6.283185307179586 * static_cast<double>(k) / m);
    num[k] = 1.0 - xi;
    den[k] = 0.7 + 0.3 * xi;
  }
  const auto re = random_vec(nz, 3), im = random_vec(nz, 4);
  for (std::size_t i = 0; i < nz; ++i) zs.emplace_back(3.0 * re[i], 3.0 * im[i]);
  for (auto _ : st) {
    auto w = Parallel ? scq::kernels::parallel::winding_batch(num, den, zs)
                      : scq::kernels::serial::winding_batch(num, den, zs);
    benchmark::DoNotOptimize(w.data());
  }
}

template <bool Parallel>
void history(benchmark::State& st) {
  const std::size_t n = 1000;
  const std::size_t dim = static_cast<std::size_t>(st.range(0));
  const auto w = random_vec(n + 1, 5);
  std::vector<std::vector<double>> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = random_vec(dim, 10 + k);
  std::vector<double> h(dim);
  for (auto _ : st) {
    if constexpr (Parallel) {
      scq::kernels::parallel::history_sum(w, v, n, h.data(), dim);
    } else {
      scq::kernels::serial::history_sum(w, v, n, h.data(), dim);
    }
    benchmark::DoNotOptimize(h.data());
  }
}

}  // namespace

BENCHMARK(cauchy<false>)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK(cauchy<true>)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK(winding<false>)->Arg(1024);
BENCHMARK(winding<true>)->Arg(1024);
BENCHMARK(history<false>)->Arg(999)->Arg(4999);
BENCHMARK(history<true>)->Arg(999)->Arg(4999);

BENCHMARK_MAIN();
