#include <benchmark/benchmark.h>

#include "crosswise/crosswise.hpp"

using namespace crosswise;

static void BM_InvRegIncBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  const kernel::BetaParams bp(a, 1.4 * a + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel::inv_reg_inc_beta(bp, Probability(0.975)));
  }
}
BENCHMARK(BM_InvRegIncBeta)->Arg(5)->Arg(500)->Arg(20000);

static void BM_CpInterval(benchmark::State& state) {
  const ModelConfig c(40000, 0.4);
  std::int64_t z = 20000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cp_interval(c, ObservedCount(c, z), ConfidenceLevel(0.95)));
    z = z == 24000 ? 20000 : z + 1;
  }
}
BENCHMARK(BM_CpInterval);

// Restricted table at the binding point, as built once per sample-size evaluation.
static void BM_IntervalTableAtBindingPoint(benchmark::State& state) {
  const ModelConfig c(state.range(0), 0.4);
  const CountRange counts = significant_counts(c.n(), rho_at(c, 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(IntervalTable(c, ConfidenceLevel(0.95), Method::cp, counts));
  }
}
BENCHMARK(BM_IntervalTableAtBindingPoint)->Arg(1000)->Arg(40000)->Unit(benchmark::kMillisecond);

static void BM_CriterionValue(benchmark::State& state) {
  const DesignSpec spec{0.4, 0.5, 0.95, 0.05, 0.01};
  const auto criterion = state.range(1) == 0 ? Criterion::expected_length : Criterion::assured_length;
  for (auto _ : state) {
    benchmark::DoNotOptimize(criterion_value(spec, criterion, state.range(0)));
  }
}
BENCHMARK(BM_CriterionValue)->Args({1326, 0})->Args({38576, 1})->Unit(benchmark::kMillisecond);

static void BM_CoverageCurve(benchmark::State& state) {
  const ModelConfig c(1000, 0.12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(curve(c, ConfidenceLevel(0.95), Method::cp, GridSpec{0.005, 0.995, 0.005}, 0.05));
  }
}
BENCHMARK(BM_CoverageCurve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
