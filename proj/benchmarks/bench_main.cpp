#include <benchmark/benchmark.h>

#include "quanneal/exact.hpp"
#include "quanneal/noise.hpp"
#include "quanneal/observables.hpp"
#include "quanneal/statevector.hpp"

using namespace quanneal;

static void BM_ApplyRx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto st = PureState::plus_state(n);
  int site = 0;
  for (auto _ : state) {
    st.apply_rx(site, -0.37);
    site = (site + 1) % n;
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_ApplyRx)->Arg(12)->Arg(16)->Arg(20);

static void BM_RzzLayer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = periodic_chain(n);
  auto st = PureState::plus_state(n);
  const auto layers = g.color_layers();
  std::vector<std::pair<int, int>> edges;
  std::vector<double> thetas;
  for (int e : layers[0]) {
    edges.push_back(g.edges[e]);
    thetas.push_back(-0.21);
  }
  for (auto _ : state) st.apply_rzz_layer(edges, thetas);
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_RzzLayer)->Arg(12)->Arg(16)->Arg(20);

static void BM_TrotterStepChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = periodic_chain(n);
  const auto plan = build_trotter_plan(g, uniform_couplings(g, 1.0), {}, 0.5, 1);
  for (auto _ : state) {
    auto st = run_trotter_anneal(plan);
    benchmark::DoNotOptimize(st.amplitudes().data());
  }
}
BENCHMARK(BM_TrotterStepChain)->Arg(12)->Arg(16)->Arg(20);

static void BM_NoisyTrajectory(benchmark::State& state) {
  const auto g = periodic_chain(12);
  const auto plan = build_trotter_plan(g, uniform_couplings(g, 1.0), {}, 0.5, 10);
  const auto model = default_sherbrooke_model();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto result = run_noisy_anneal(plan, model, 1, 8, seed++);
    benchmark::DoNotOptimize(result.n_def.mean);
  }
}
BENCHMARK(BM_NoisyTrajectory);

static void BM_BruteForceGround(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = periodic_chain(n);
  const auto c = disordered_couplings(g, 5);
  for (auto _ : state) {
    auto res = brute_force_ground(g, c);
    benchmark::DoNotOptimize(res.e0);
  }
}
BENCHMARK(BM_BruteForceGround)->Arg(12)->Arg(16)->Arg(20);

static void BM_SpectrumSlice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = periodic_chain(n);
  const auto c = disordered_couplings(g, 5);
  for (auto _ : state) {
    auto slice = spectrum_at(g, c, 0.55, 2);
    benchmark::DoNotOptimize(slice.energies[0]);
  }
}
BENCHMARK(BM_SpectrumSlice)->Arg(8)->Arg(10)->Arg(12);

BENCHMARK_MAIN();
