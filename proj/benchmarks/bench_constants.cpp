#include <benchmark/benchmark.h>

#include "diamlaw/constants.hpp"

namespace {

using namespace diamlaw;

void BM_Mc5d(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(i_a_mc5d(ShapeParam(0.5), static_cast<std::uint64_t>(state.range(0)), 3));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mc5d)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Reduced3d(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced3d_midpoint(ShapeParam(0.5), static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Reduced3d)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
