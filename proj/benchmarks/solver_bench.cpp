#include <benchmark/benchmark.h>

#include "lef/branch_minus.hpp"
#include "lef/branch_plus.hpp"
#include "lef/laplacian.hpp"
#include "lef/shooting.hpp"

namespace {

using namespace lef;

void BM_PoissonInterval(benchmark::State& state) {
  const auto grid = build_interval(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(torsion_function(grid, 1e-10));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PoissonInterval)->Arg(65)->Arg(129)->Arg(257)->Arg(513)->Arg(1025)->Complexity();

void BM_PoissonSquare(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = build_rectangle(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(torsion_function(grid, 1e-10));
}
BENCHMARK(BM_PoissonSquare)->Arg(33)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_MinimalSolution(benchmark::State& state) {
  const auto grid = build_interval(static_cast<std::size_t>(state.range(0)));
  const ProblemSpec spec = make_problem(0.5, 3.0, Variant::Plus, unit_potentials(grid), *grid);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_solution(grid, spec, 5.0, IterationOptions{}));
}
BENCHMARK(BM_MinimalSolution)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_MinimizeFree(benchmark::State& state) {
  const auto grid = build_interval(static_cast<std::size_t>(state.range(0)));
  const ProblemSpec spec = make_problem(0.5, 3.0, Variant::Minus, unit_potentials(grid), *grid);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_free(grid, spec, 11.5, MinimizeOptions{}));
}
BENCHMARK(BM_MinimizeFree)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_SolutionCount(benchmark::State& state) {
  const auto slopes = default_slope_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(solution_count(5.0, 0.5, 3.0, Variant::Plus, slopes, 4000));
}
BENCHMARK(BM_SolutionCount)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
