#include <benchmark/benchmark.h>

#include <cstdint>

#include "ulci/analytics.hpp"
#include "ulci/procedures.hpp"
#include "ulci/varsolve.hpp"

namespace {

void BM_ExactCoverage(benchmark::State& state) {
  const auto bound = ulci::bound_function({ulci::Procedure::UMP, true}, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulci::exact_coverage(bound));
  }
}
BENCHMARK(BM_ExactCoverage);

void BM_ExpectedWidth(benchmark::State& state) {
  const auto bound = ulci::bound_function({ulci::Procedure::MIN_EFFORT, true}, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulci::expected_width(bound));
  }
}
BENCHMARK(BM_ExpectedWidth);

void BM_Truncate(benchmark::State& state) {
  const auto raw = ulci::bound_function({ulci::Procedure::NP, false}, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulci::truncate(raw));
  }
}
BENCHMARK(BM_Truncate);

void BM_SolveLinear(benchmark::State& state) {
  const auto grid =
      ulci::make_grid(static_cast<int>(state.range(0)), ulci::GridObjective::LINEAR);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulci::solve_linear(grid, 0.25));
  }
}
BENCHMARK(BM_SolveLinear)->Arg(1000)->Arg(4000);

void BM_SolveQuadratic(benchmark::State& state) {
  const auto grid =
      ulci::make_grid(static_cast<int>(state.range(0)), ulci::GridObjective::QUADRATIC);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ulci::solve_quadratic(grid, 0.25));
  }
}
BENCHMARK(BM_SolveQuadratic)->Arg(1000)->Arg(4000);

void BM_McCoverage(benchmark::State& state) {
  const ulci::ModelConfig model;
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ulci::mc_coverage({ulci::Procedure::SD, true}, 0.25, model, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_McCoverage)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
