// End-to-end costs: lattice enumeration, Kloosterman sums over the
// enumerated points, and whole-coefficient assembly as the window grows.

#include "hypfc/kloosterman.hpp"
#include "hypfc/lattice.hpp"
#include "hypfc/pell.hpp"
#include "hypfc/poincare.hpp"

#include <benchmark/benchmark.h>

using namespace hypfc;

static void BM_EnumerateRstar(benchmark::State& state) {
  PellData pd = solve_pell(2);
  mpz_class n(state.range(0));
  for (auto _ : state) {
    auto pts = enumerate_rstar(pd, n);
    benchmark::DoNotOptimize(pts.data());
  }
}
BENCHMARK(BM_EnumerateRstar)->Arg(7)->Arg(199)->Arg(3001);

static void BM_EnumerateHd(benchmark::State& state) {
  PellData pd = solve_pell(state.range(0));
  mpq_class window(state.range(1));
  for (auto _ : state) {
    auto cells = enumerate_hd(pd, window);
    benchmark::DoNotOptimize(&cells);
  }
  state.SetLabel("d=" + std::to_string(state.range(0)) +
                 " X=" + std::to_string(state.range(1)));
}
BENCHMARK(BM_EnumerateHd)->Args({2, 2})->Args({2, 20})->Args({13, 2})->Args({46, 2});

static void BM_SumParPar(benchmark::State& state) {
  long c = state.range(0);
  for (auto _ : state) {
    auto v = s_par_par(1, 1, c);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_SumParPar)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_SumHypPar(benchmark::State& state) {
  PellData pd = solve_pell(2);
  mpz_class n(state.range(0));
  for (auto _ : state) {
    auto v = s_hyp_par(pd, 1, 1, n);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_SumHypPar)->Arg(7)->Arg(199)->Arg(3001);

static CoeffRequest request(Expansion e, long d, double window) {
  CoeffRequest req;
  req.expansion = e;
  req.k = 12;
  if (d) req.d = d;
  req.m = 1;
  req.n = 1;
  req.window = window;
  req.tol = 1e-9;
  return req;
}

static void BM_CoeffParPar(benchmark::State& state) {
  auto req = request(Expansion::par_par, 0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto res = coeff_par_par(req);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_CoeffParPar)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_CoeffHypPar(benchmark::State& state) {
  auto req = request(Expansion::hyp_par, 2, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto res = coeff_hyp_par(req);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_CoeffHypPar)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_CoeffHypHyp(benchmark::State& state) {
  auto req = request(Expansion::hyp_hyp, 2, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto res = coeff_hyp_hyp(req);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_CoeffHypHyp)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Phi(benchmark::State& state) {
  long d = state.range(0);
  for (auto _ : state) {
    double v = phi_negative_pell(d, 2.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(13)->Arg(46)->Unit(benchmark::kMillisecond);
