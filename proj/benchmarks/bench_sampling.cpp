#include <vector>

#include <benchmark/benchmark.h>

#include "diamlaw/sampling.hpp"

namespace {

using namespace diamlaw;

void BM_Fill(benchmark::State& state, SampleMethod method) {
  const ShapeParam a(0.5);
  Philox rng({1, tagged_stream(StreamTag::sample, 0)});
  std::vector<Point3> out;
  for (auto _ : state) {
    fill_points(rng, method, a, 100000, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK_CAPTURE(BM_Fill, parameter, SampleMethod::parameter);
BENCHMARK_CAPTURE(BM_Fill, rejection, SampleMethod::rejection);
BENCHMARK_CAPTURE(BM_Fill, ball_scaling, SampleMethod::ball_scaling);
BENCHMARK_CAPTURE(BM_Fill, disk, SampleMethod::disk_diagnostic);

void BM_Philox(benchmark::State& state) {
  Philox rng({1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_Philox);

void BM_LocalizedPair(benchmark::State& state) {
  const LocalizedPairSampler window(0.02, ShapeParam(0.5));
  Philox rng({1, 3});
  for (auto _ : state) {
    const auto c = window.draw_anchor(rng);
    benchmark::DoNotOptimize(window.draw_partner(rng, c));
  }
}
BENCHMARK(BM_LocalizedPair);

}  // namespace

BENCHMARK_MAIN();
