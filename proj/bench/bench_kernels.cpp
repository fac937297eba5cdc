// Serial reference vs OpenMP kernels on the hot estimators.
#include <benchmark/benchmark.h>

#include "omdlab/costs.hpp"
#include "omdlab/regret.hpp"
#include "omdlab/regularizers.hpp"

namespace {

using namespace omdlab;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

const FeasibleSet& simplex() {
  static const FeasibleSet s = FeasibleSet::truncated_simplex(10, 1e-6);
  return s;
}

const FeasibleSet& box() {
  static const FeasibleSet b = FeasibleSet::positive_box(10, 1e-3, 10.0);
  return b;
}

const CostSequence& d_optimal() {
  static const CostSequence c = generate_d_optimal(100, 5, 10, 10, 7);
  return c;
}

const CostSequence& poisson() {
  static const CostSequence c = generate_poisson(100, 150, 10, 7);
  return c;
}

void BM_CertifyDOptimalBurg(benchmark::State& state) {
  const Regularizer r(RegularizerKind::kBurg, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_relative_smoothness(d_optimal(), r, simplex(), 2000, 42,
                                                         mode(state)));
  }
}

void BM_CertifyPoissonBurg(benchmark::State& state) {
  const Regularizer r(RegularizerKind::kBurg, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        certify_relative_smoothness(poisson(), r, box(), 2000, 42, mode(state)));
  }
}

void BM_BregmanConstantsKl(benchmark::State& state) {
  const Regularizer r(RegularizerKind::kNegEntropy, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_constants(r, simplex(), 2000, 42, mode(state)));
  }
}

void BM_FunctionalVariationPoisson(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(functional_variation(poisson(), box(), 500, 42, mode(state)));
  }
}

void BM_GradientVariationPoisson(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gradient_variation(poisson(), box(), NormKind::kLInf, 500, 42, mode(state)));
  }
}

}  // namespace

BENCHMARK(BM_CertifyDOptimalBurg)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyPoissonBurg)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BregmanConstantsKl)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FunctionalVariationPoisson)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientVariationPoisson)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
