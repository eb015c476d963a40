#include <benchmark/benchmark.h>

#include <random>

#include "scaledcons/graph.hpp"
#include "scaledcons/scalar_settling.hpp"
#include "scaledcons/scenario_config.hpp"
#include "scaledcons/simulator.hpp"

namespace {

using namespace scaledcons;

Matrix random_laplacian(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> w(0.2, 2.0), u(0.0, 1.0);
  Matrix a(n);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    a(i, p) = a(p, i) = w(rng);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j) == 0.0 && u(rng) < 0.3) a(i, j) = a(j, i) = w(rng);
  return laplacian(a);
}

void BM_AlgebraicConnectivity(benchmark::State& state) {
  const auto lap = random_laplacian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(algebraic_connectivity(lap));
}
BENCHMARK(BM_AlgebraicConnectivity)->Arg(6)->Arg(16)->Arg(32)->Arg(64);

void BM_ScalarSettling(benchmark::State& state) {
  const ALParams params(2.0, 1.0, 1.0, {1, 3}, {5, 3});
  for (auto _ : state) benchmark::DoNotOptimize(integrate_settling_time(params, 1e6));
}
BENCHMARK(BM_ScalarSettling)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state, const char* name) {
  auto cfg = load_scenario_config(std::string(SCALEDCONS_BENCH_CONFIG_DIR) + "/" + name + ".json");
  cfg.run.settings.horizon = 1.0;
  const auto prepared = prepare_scenario(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(prepared.scenario));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(1.0 / cfg.run.settings.step));
}
BENCHMARK_CAPTURE(BM_Simulate, example1_c1_gal, "example1_c1_gal")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Simulate, example2_c4_gal, "example2_c4_gal")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
