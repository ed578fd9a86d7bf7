// Serial reference vs OpenMP driver for the hot kernels.

#include <benchmark/benchmark.h>

#include "vg/best_response.hpp"
#include "vg/game_engine.hpp"
#include "vg/kernels.hpp"

namespace {

vg::UserSet users(int n, int dim = 2) {
  vg::InstanceSpec spec;
  spec.n = n;
  spec.dimension = dim;
  spec.seed = 7;
  return vg::generate_users(spec);
}

std::vector<vg::Disk> disks(int n) {
  const auto u = users(n);
  const auto f1 = vg::build_strategy(u, 4, vg::StrategyKind::disk_net);
  return vg::nearest_facility_disks(u, f1.placements);
}

vg::kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? vg::kernels::Exec::serial : vg::kernels::Exec::parallel;
}

void BM_SweepAll(benchmark::State& state) {
  const auto d = disks(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vg::kernels::sweep_all(d, exec_of(state)));
}

void BM_HyperplaneSplits(benchmark::State& state) {
  const auto u = users(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(vg::kernels::hyperplane_splits(u.points(), exec_of(state)));
}

void BM_MinKEnclosing(benchmark::State& state) {
  const auto u = users(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(0)) / 4;
  for (auto _ : state)
    benchmark::DoNotOptimize(vg::kernels::min_k_enclosing(u.points(), k, exec_of(state)));
}

void BM_HyperplaneSplits3D(benchmark::State& state) {
  const auto u = users(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(vg::kernels::hyperplane_splits(u.points(), exec_of(state)));
}

// Second argument: 0 = serial reference, 1 = parallel.
BENCHMARK(BM_SweepAll)->ArgsProduct({{200, 800}, {0, 1}})->UseRealTime();
BENCHMARK(BM_HyperplaneSplits)->ArgsProduct({{100, 400}, {0, 1}})->UseRealTime();
BENCHMARK(BM_MinKEnclosing)->ArgsProduct({{40, 80}, {0, 1}})->UseRealTime();
BENCHMARK(BM_HyperplaneSplits3D)->ArgsProduct({{30, 60}, {0, 1}})->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
