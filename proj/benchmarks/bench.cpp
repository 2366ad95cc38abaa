#include <benchmark/benchmark.h>

#include <twofold/critical.hpp>
#include <twofold/elliptic.hpp>
#include <twofold/maps.hpp>
#include <twofold/series.hpp>
#include <twofold/solver.hpp>

using namespace twofold;

namespace {

void BM_EnumerateMaps(benchmark::State& state) {
  int E = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_rooted_maps_with(E));
}
BENCHMARK(BM_EnumerateMaps)->Arg(3)->Arg(4);

void BM_GasketFixedPoint(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  ExactLoopWeights w;
  w.n = 1, w.a = Rat(6, 5), w.h1 = Rat(1, 10), w.h2 = Rat(1, 12);
  w.u1 = 1, w.u2 = Rat(3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(gasket_fixed_point(w, order, 2));
}
BENCHMARK(BM_GasketFixedPoint)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_RingTable(benchmark::State& state) {
  int kmax = static_cast<int>(state.range(0));
  Rat h1(1, 2), h2(1, 3), a(2);
  for (auto _ : state) benchmark::DoNotOptimize(ring_series(h1, h2, a, kmax));
}
BENCHMARK(BM_RingTable)->Arg(8)->Arg(16);

void BM_Theta1(benchmark::State& state) {
  Cplx v(0.3, -0.7);
  for (auto _ : state) benchmark::DoNotOptimize(theta1(v, 2.0));
}
BENCHMARK(BM_Theta1);

void BM_ZetaBTheta(benchmark::State& state) {
  ZetaB z{0.3, 4.0};  // theta form
  Cplx v(0.3, -1.2);
  for (auto _ : state) benchmark::DoNotOptimize(z(v));
}
BENCHMARK(BM_ZetaBTheta);

void BM_BuildFrame(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        build_frame(-2.1, 1.9, -2.0, 2.2, 1.1, 0.08, 0.09));
}
BENCHMARK(BM_BuildFrame);

void BM_SolveCuts(benchmark::State& state) {
  ModelParams p{1.0, 1.0, 0.1, 0.1, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_cuts(p));
}
BENCHMARK(BM_SolveCuts)->Unit(benchmark::kMillisecond);

void BM_SpectralDensity(benchmark::State& state) {
  ModelParams p{1.0, 1.0, 0.1, 0.1, 1.0, 1.0};
  auto rep = solve_cuts(p);
  double tau = 0.4 * rep.sol.fr.T;
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral_density(rep.sol, 1, tau));
}
BENCHMARK(BM_SpectralDensity);

void BM_CriticalA1(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(critical_point_a1(1.0, 1.7, 0.35));
}
BENCHMARK(BM_CriticalA1);

void BM_CriticalGeneral(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(critical_point_general(1.0, 1.4, 2.0, 0.35));
}
BENCHMARK(BM_CriticalGeneral)->Unit(benchmark::kMillisecond);

void BM_CriticalDensity(benchmark::State& state) {
  auto cp = critical_point_general(1.0, 1.4, 2.0, 0.35);
  for (auto _ : state)
    benchmark::DoNotOptimize(critical_density(cp, 1, 3.0));
}
BENCHMARK(BM_CriticalDensity);

}  // namespace

BENCHMARK_MAIN();
