#include <benchmark/benchmark.h>

#include "ringflow/model_family.hpp"
#include "ringflow/solver.hpp"

using namespace ringflow;

static void SolveAnnulus(benchmark::State& state) {
  RingDomain d;
  d.lambda = model::inner_radius(0.5);
  int n = int(state.range(0));
  for (auto _ : state) {
    Field f = solve_poisson(d, n, 3 * n / 4);
    benchmark::DoNotOptimize(f.u_max());
  }
}
BENCHMARK(SolveAnnulus)->Arg(32)->Arg(64)->Arg(96);

static void SolvePerturbed(benchmark::State& state) {
  RingDomain d;
  d.lambda = 0.3;
  d.v_inner = FourierSeries(3);
  d.v_inner.cos_c[2] = 0.02;
  int n = int(state.range(0));
  for (auto _ : state) {
    Field f = solve_poisson(d, n, 3 * n / 4);
    benchmark::DoNotOptimize(f.solve_residual());
  }
}
BENCHMARK(SolvePerturbed)->Arg(32)->Arg(64)->Arg(96);

static void BoundaryTraceExtraction(benchmark::State& state) {
  RingDomain d;
  d.lambda = model::inner_radius(0.5);
  Field f = solve_poisson(d, 64, 48);
  for (auto _ : state) {
    auto tr = f.boundary_trace(Which::Outer, NormalConvention::Outward);
    benchmark::DoNotOptimize(tr.grad_norm.maxCoeff());
  }
}
BENCHMARK(BoundaryTraceExtraction);

BENCHMARK_MAIN();
