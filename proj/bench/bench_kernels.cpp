#include <benchmark/benchmark.h>

#include "thompson/kloosterman.hpp"
#include "thompson/rademacher.hpp"

using namespace thompson;

namespace {

void BM_KloostermanDirect(benchmark::State& state) {
  const i64 c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_sum(-3, 40, c, std::nullopt, 128));
}

void BM_KloostermanFactored(benchmark::State& state) {
  const i64 c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_factored(-3, 40, c, 128));
}

void BM_KloostermanFactoredDouble(benchmark::State& state) {
  const i64 c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_factored_double(-3, 40, c));
}

TruncationConfig config(i64 c_max, int threads) {
  TruncationConfig cfg;
  cfg.c_max = c_max;
  cfg.threads = threads;
  return cfg;
}

// Serial reference: direct Kloosterman sums, all in MPFR.
void BM_CoefficientSerialReference(benchmark::State& state) {
  const TruncationConfig cfg = config(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(coefficient_A_reference({3, 1, 3}, 40, cfg));
}

void BM_CoefficientParallel(benchmark::State& state) {
  const TruncationConfig cfg = config(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(coefficient_A({3, 1, 3}, 40, cfg));
}

}  // namespace

BENCHMARK(BM_KloostermanDirect)->Arg(4 * 97)->Arg(4 * 1009)->Arg(4 * 9973);
BENCHMARK(BM_KloostermanFactored)->Arg(4 * 97)->Arg(4 * 1009)->Arg(4 * 9973);
BENCHMARK(BM_KloostermanFactoredDouble)->Arg(4 * 97)->Arg(4 * 1009)->Arg(4 * 9973);
BENCHMARK(BM_CoefficientSerialReference)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoefficientParallel)->Args({200, 1})->Args({200, 0})->Args({5000, 1})->Args({5000, 0})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
