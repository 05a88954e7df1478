// Hypergeometric kernel costs at the argument shapes the assembly actually
// produces: small-|z| fast paths, the large-argument confluent cases near
// the window edge, and the quadrature fallback for cells inside (0,1).

#include "hypfc/hypnum.hpp"

#include <benchmark/benchmark.h>

#include <complex>

using namespace hypfc;

static const double kEll2 = 3.5254943480781715;  // 2 log(3 + 2 sqrt 2)

static void BM_Hyp0f1(benchmark::State& state) {
  // argument -4 pi^2 m n / c^2 for c = state.range(0)
  double c = static_cast<double>(state.range(0));
  std::complex<double> z(-4.0 * 9.869604401089358 / (c * c), 0.0);
  for (auto _ : state) {
    auto v = hyp0f1(12.0, z, 1e-13);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Hyp0f1)->Arg(1)->Arg(10)->Arg(100);

static void BM_Hyp1f1(benchmark::State& state) {
  // the cusp-to-geodesic factor at N = state.range(0), d = 2, k = 12, m = 1
  double cd = state.range(0) / (2.0 * 1.4142135623730951);
  std::complex<double> a(6.0, -2.0 * 3.141592653589793 / kEll2);
  std::complex<double> z(0.0, 2.0 * 3.141592653589793 / cd);
  for (auto _ : state) {
    auto v = hyp1f1(a, 12.0, z, 1e-13);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Hyp1f1)->Arg(1)->Arg(8)->Arg(40);

static void BM_Hyp2f1(benchmark::State& state) {
  // geodesic/geodesic closed form at 1/C for C = range/8 (outside (0,1))
  double inv_c = 8.0 / static_cast<double>(state.range(0));
  std::complex<double> a(6.0, -2.0 * 3.141592653589793 / kEll2);
  std::complex<double> b(6.0, 2.0 * 3.141592653589793 / kEll2);
  for (auto _ : state) {
    auto v = hyp2f1(a, b, 12.0, inv_c, 1e-13);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Hyp2f1)->Arg(9)->Arg(17)->Arg(160);

static void BM_ComplexBeta(benchmark::State& state) {
  std::complex<double> u(6.0, 1.7823);
  std::complex<double> v(6.0, -1.7823);
  for (auto _ : state) {
    auto b = complex_beta(u, v);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_ComplexBeta);

static void BM_KernelClosed(benchmark::State& state) {
  HypParams p(12, kEll2, 1, 1);
  double r = static_cast<double>(state.range(0)) / 8.0;
  for (auto _ : state) {
    auto v = i_hyp_hyp(p, kEll2, r, 1, 1);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_KernelClosed)->Arg(9)->Arg(17)->Arg(160);

static void BM_KernelQuadrature(benchmark::State& state) {
  // interior cell: the tanh-sinh path, by far the most expensive kernel
  HypParams p(12, kEll2, 1, 1);
  double r = static_cast<double>(state.range(0)) / 16.0;
  for (auto _ : state) {
    auto v = detail::i_hyp_hyp_quadrature(p, kEll2, r, 1, 1, 1e-11);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_KernelQuadrature)->Arg(2)->Arg(8)->Arg(14);

BENCHMARK_MAIN();
