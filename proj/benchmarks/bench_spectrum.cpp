#include <benchmark/benchmark.h>

#include "ringflow/bifurcation.hpp"

using namespace ringflow;

static void SpectralPointEval(benchmark::State& state) {
  double acc = 0.0;
  for (auto _ : state) {
    for (int i = 1; i < 50; ++i)
      acc += spectrum::mu1(i / 50.0, double(state.range(0)));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(SpectralPointEval)->Arg(2)->Arg(10)->Arg(100);

static void BifurcationPointSearch(benchmark::State& state) {
  for (auto _ : state) {
    auto bp = spectrum::find_bifurcation_point(int(state.range(0)));
    benchmark::DoNotOptimize(bp.lambda_k);
  }
}
BENCHMARK(BifurcationPointSearch)->Arg(2)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
