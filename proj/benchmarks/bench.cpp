// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "algc/verify.hpp"

namespace {

using namespace algc;

const Fixture& hyperbolic() {
  static const Fixture fx = find_fixture("hyperbolic");
  return fx;
}

const Fixture& twisted() {
  static const Fixture fx = find_fixture("twisted-j");
  return fx;
}

void BM_JetEvalMetricField(benchmark::State& state) {
  const Fixture& fx = hyperbolic();
  const ScalarField& g = fx.metric->g(0, 0);
  std::mt19937_64 rng(1);
  const auto p = fx.alg->box().sample(rng);
  for (auto _ : state) {
    EvalCache cache(p);
    benchmark::DoNotOptimize(cache.eval(g));
  }
}
BENCHMARK(BM_JetEvalMetricField);

void BM_LeviCivitaConstruction(benchmark::State& state) {
  const Fixture& fx = twisted();
  for (auto _ : state) {
    Connection lc = levi_civita(*fx.metric);
    benchmark::DoNotOptimize(lc);
  }
}
BENCHMARK(BM_LeviCivitaConstruction);

void BM_LeviCivitaEvalPoint(benchmark::State& state) {
  const Fixture& fx = twisted();
  const Connection lc = levi_civita(*fx.metric);
  std::mt19937_64 rng(2);
  const auto p = fx.alg->box().sample(rng);
  const int r = fx.alg->rank();
  for (auto _ : state) {
    EvalCache cache(p);
    double acc = 0.0;
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) acc += cache.value(lc.gamma(k, i, j));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_LeviCivitaEvalPoint);

void BM_TorsionIdentityResidual(benchmark::State& state) {
  const Fixture& fx = twisted();
  const Connection lc = levi_civita(*fx.metric);
  std::mt19937_64 rng(3);
  const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
  const auto p = fx.alg->box().sample(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        torsion_identity_residual(lc, *fx.complex_structure, x, y, p));
}
BENCHMARK(BM_TorsionIdentityResidual);

void BM_MetricSuiteHyperbolic(benchmark::State& state) {
  const Fixture& fx = hyperbolic();
  SuiteParams params;
  params.points = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Report rep = run_suite(fx, Suite::kMetric, params);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_MetricSuiteHyperbolic)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
