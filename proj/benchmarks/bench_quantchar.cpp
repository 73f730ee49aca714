#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "quantchar/assignment.hpp"
#include "quantchar/lloyd.hpp"
#include "quantchar/metrics.hpp"
#include "quantchar/quanterror.hpp"
#include "quantchar/random.hpp"

namespace {

using namespace quantchar;

Grid spread_grid(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -3.0 + 6.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return grid_1d(v);
}

void BM_QerrClosedFormNormal(benchmark::State& state) {
  const auto law = Analytic1D::normal(0, 1);
  const Grid grid = spread_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qerr_analytic_1d(law, grid, 2.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QerrClosedFormNormal)->RangeMultiplier(4)->Range(2, 512)->Complexity();

void BM_QerrDiscrete(benchmark::State& state) {
  const auto atoms = static_cast<std::size_t>(state.range(0));
  Grid points(atoms, Point(2));
  for (std::size_t i = 0; i < atoms; ++i) {
    CounterRng rng(Seed{1}, i);
    points[i] = {rng.normal(), rng.normal()};
  }
  const auto mu = DiscreteMeasure::uniform_over(points);
  const Grid grid{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(qerr_discrete(mu, grid, 2.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QerrDiscrete)->Range(64, 1 << 16);

void BM_CommonPoolEvaluation(benchmark::State& state) {
  const auto f = ErrorFunction::common_pool(SampledMeasure::standard_gaussian(2), 2.0, NormSpec(),
                                            static_cast<std::size_t>(state.range(0)), Seed{2});
  const Grid grid{{0.0, 0.0}, {1.0, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(f(grid));
}
BENCHMARK(BM_CommonPoolEvaluation)->Range(1 << 10, 1 << 18);

void BM_LloydExactCells(benchmark::State& state) {
  LloydOptions options;
  options.exact_cells = true;
  options.iterations = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(lloyd(Analytic1D::normal(0, 1), static_cast<std::size_t>(state.range(0)), options));
}
BENCHMARK(BM_LloydExactCells)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_LloydPool1D(benchmark::State& state) {
  LloydOptions options;
  options.pool_size = static_cast<std::size_t>(state.range(0));
  options.iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(lloyd(Analytic1D::uniform(0, 1), 8, options));
}
BENCHMARK(BM_LloydPool1D)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Assignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = CounterRng(Seed{3}, i).uniform();
  for (auto _ : state) benchmark::DoNotOptimize(solve_assignment(cost, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assignment)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNCubed);

void BM_QDistLevelTwo(benchmark::State& state) {
  const auto mu = ErrorFunction::exact(Analytic1D::normal(0, 1), 2.0);
  const auto nu = ErrorFunction::exact(Analytic1D::uniform(-1, 2), 2.0);
  QDistOptions options;
  options.level = 2;
  options.box = std::make_pair(Point{-4.0}, Point{4.0});
  options.lattice_budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qdist(mu, nu, options));
}
BENCHMARK(BM_QDistLevelTwo)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Wasserstein1DAnalytic(benchmark::State& state) {
  const Measure a = Analytic1D::normal(0, 1);
  const Measure b = Analytic1D::lognormal(0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_1d(a, b, 2.0));
}
BENCHMARK(BM_Wasserstein1DAnalytic);

}  // namespace

BENCHMARK_MAIN();
