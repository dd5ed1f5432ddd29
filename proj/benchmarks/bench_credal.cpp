#include <benchmark/benchmark.h>

#include "credal/families.hpp"
#include "credal/inference.hpp"
#include "credal/prob.hpp"
#include "credal/rng.hpp"
#include "credal/tower.hpp"
#include "credal/tvuniform.hpp"

using namespace credal;

static void BM_TvDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto a = sample_l1_uniform(n, rng);
  const auto b = sample_l1_uniform(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tv_distance(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TvDistance)->Arg(16)->Arg(1024)->Arg(1 << 16);

static void BM_SampleSimplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<double> out(n);
  for (auto _ : state) {
    sample_simplex(rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSimplex)->Arg(1601);

static void BM_BuildMeasure(benchmark::State& state) {
  const ParamFamily f = binomial_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_measure(f).normalizer());
}
BENCHMARK(BM_BuildMeasure)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_BuildTower(benchmark::State& state) {
  TowerConfig cfg{FamilySource{binomial_family(10)}};
  cfg.base_samples = static_cast<std::size_t>(state.range(0));
  cfg.order_samples = static_cast<std::size_t>(state.range(0));
  cfg.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_tower(cfg).level_size(5));
}
BENCHMARK(BM_BuildTower)->Args({400, 1})->Args({1601, 1})->Args({1601, 0})->Unit(benchmark::kMillisecond);

static void BM_ImpliedProbabilities(benchmark::State& state) {
  TowerConfig cfg{FamilySource{binomial_family(10)}};
  cfg.seed = 3;
  const Tower t = build_tower(cfg);
  const Event e(11, {1});
  for (auto _ : state) benchmark::DoNotOptimize(implied_probabilities(t, e).by_order.back().front());
}
BENCHMARK(BM_ImpliedProbabilities)->Unit(benchmark::kMillisecond);

static void BM_UrnExact(benchmark::State& state) {
  const UrnState s{static_cast<int>(state.range(0)), {"red", "yellow", "blue"}, {"red", "red", "yellow"}};
  for (auto _ : state) benchmark::DoNotOptimize(urn_update(s).values.front());
}
BENCHMARK(BM_UrnExact)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
