// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "clusterfusion/closed_forms.hpp"
#include "clusterfusion/fusion.hpp"
#include "clusterfusion/noise.hpp"
#include "clusterfusion/strategies.hpp"

using namespace clusterfusion;

namespace {

ClusterChain canonical_chain(int n, LabelAllocator& alloc) {
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) labels.push_back(alloc.allocate());
  return ClusterChain{std::move(labels), DensityMatrix::from_pure(linear_cluster(n))};
}

void BM_Tensor(benchmark::State& state) {
  const int q = int(state.range(0));
  const DensityMatrix a = DensityMatrix::from_pure(linear_cluster(q));
  const DensityMatrix b = DensityMatrix::from_pure(linear_cluster(q));
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_Tensor)->Arg(3)->Arg(4)->Arg(5);

void BM_DephaseAll(benchmark::State& state) {
  const int q = int(state.range(0));
  const DensityMatrix rho = DensityMatrix::from_pure(linear_cluster(q));
  const DephasingStrength p(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(dephase_all(rho, p));
}
BENCHMARK(BM_DephaseAll)->Arg(3)->Arg(5)->Arg(7);

void BM_MinPtEigenvalue(benchmark::State& state) {
  const int q = int(state.range(0));
  const DensityMatrix rho = DensityMatrix::from_pure(linear_cluster(q));
  for (auto _ : state) benchmark::DoNotOptimize(min_pt_eigenvalue(rho, {1}));
}
BENCHMARK(BM_MinPtEigenvalue)->Arg(4)->Arg(5)->Arg(6);

void BM_Fuse(benchmark::State& state) {
  const int n = int(state.range(0));
  LabelAllocator alloc;
  const ClusterChain a = canonical_chain(n, alloc);
  const ClusterChain b = canonical_chain(n, alloc);
  for (auto _ : state)
    benchmark::DoNotOptimize(fuse(a, b, a.labels.back(), b.labels.front(), alloc));
}
BENCHMARK(BM_Fuse)->Arg(2)->Arg(3)->Arg(4);

void BM_RunScenario(benchmark::State& state) {
  Strengths s;
  s.p2 = s.p3 = s.p4 = s.p_wait = 0.1;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_scenario({ScenarioName::Method1FailFail, s}));
}
BENCHMARK(BM_RunScenario);

void BM_MonteCarlo(benchmark::State& state) {
  McPolicy policy;
  policy.method = 1;
  policy.recycle = true;
  policy.storage = DephasingStrength(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(policy, state.range(0), 42));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
