#include <benchmark/benchmark.h>

#include "diamlaw/diameter.hpp"
#include "diamlaw/sampling.hpp"

namespace {

using namespace diamlaw;

SampleBatch points(std::size_t n, double a) {
  return sample_rejection({7, tagged_stream(StreamTag::diameter, n)}, n, ShapeParam(a));
}

void BM_Bruteforce(benchmark::State& state) {
  const auto batch = points(static_cast<std::size_t>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(diameter_bruteforce(batch.points));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Bruteforce)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_Pruned(benchmark::State& state) {
  const auto batch = points(static_cast<std::size_t>(state.range(0)), 0.5);
  std::uint64_t examined = 0;
  for (auto _ : state) {
    const auto r = diameter_pruned(batch.points, ShapeParam(0.5));
    examined = r.pairs_examined;
    benchmark::DoNotOptimize(r);
  }
  state.counters["pairs_examined"] = static_cast<double>(examined);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pruned)->RangeMultiplier(4)->Range(256, 262144)->Complexity();

void BM_PrunedFlat(benchmark::State& state) {
  const auto batch = points(static_cast<std::size_t>(state.range(0)), 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(diameter_pruned(batch.points, ShapeParam(0.9)));
}
BENCHMARK(BM_PrunedFlat)->RangeMultiplier(4)->Range(4096, 262144);

void BM_Radial(benchmark::State& state) {
  const auto batch = points(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(diameter_radial(batch.points));
}
BENCHMARK(BM_Radial)->RangeMultiplier(4)->Range(4096, 65536);

void BM_SweepWithCounts(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto batch = points(n, 0.5);
  const double grid[] = {0.5, 1.0, 1.3, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(diameter_with_counts(batch.points, ShapeParam(0.5), grid));
  }
}
BENCHMARK(BM_SweepWithCounts)->Arg(100000)->Arg(200000);

}  // namespace

BENCHMARK_MAIN();
