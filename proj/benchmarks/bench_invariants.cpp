#include <benchmark/benchmark.h>

#include <ribbonlink/curve.hpp>
#include <ribbonlink/euler.hpp>
#include <ribbonlink/figures.hpp>
#include <ribbonlink/generators.hpp>
#include <ribbonlink/invariants.hpp>

namespace rl = ribbonlink;

namespace {

void BM_WrithePolygonal(benchmark::State& state) {
  const auto c = rl::trefoil(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rl::writhe_polygonal(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WrithePolygonal)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

void BM_WritheQuadrature(benchmark::State& state) {
  const auto c = rl::trefoil(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rl::writhe_quadrature(c).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WritheQuadrature)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);

void BM_GaussLink(benchmark::State& state) {
  const auto pair = rl::hopf_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rl::gauss_link(pair.first, pair.second));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussLink)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

void BM_CheckCwf(benchmark::State& state) {
  const auto c = rl::trefoil(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rl::check_cwf(c).residual);
}
BENCHMARK(BM_CheckCwf)->Arg(1024);

void BM_ScanV(benchmark::State& state) {
  const auto t = rl::tantrix(rl::fig1_rod('c'));
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rl::scan_v(t, level).f.size());
}
BENCHMARK(BM_ScanV)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
