#include <random>

#include <benchmark/benchmark.h>

#include "iepg/certificate.hpp"
#include "iepg/joinbuild.hpp"
#include "iepg/multiplicity.hpp"
#include "iepg/realize.hpp"
#include "iepg/ssp.hpp"

namespace {

using namespace iepg;

std::vector<double> spaced(int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = k + 0.1 * std::sin(k);
  return out;
}

void BM_Jacobi(benchmark::State& state) {
  const std::vector<double> lambda = spaced(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_from_spectrum(lambda));
}
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(4, 64);

void BM_SspCheckPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymMatrix a = jacobi_from_spectrum(spaced(n));
  const Graph p = path_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(ssp_check(a, p));
}
BENCHMARK(BM_SspCheckPath)->DenseRange(4, 12, 4);

void BM_TreeHomotopy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ExponentSchedule s = exponent_schedule(path_graph(n), ScheduleMode::uniform);
  const std::vector<double> lambda = spaced(n);
  for (auto _ : state) benchmark::DoNotOptimize(tree_homotopy_solve(s, lambda, 0.05));
}
BENCHMARK(BM_TreeHomotopy)->DenseRange(3, 9, 3);

void BM_GenericRealizeCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> lambda = spaced(n);
  const std::vector<Vector> tests = standard_basis(n);
  for (auto _ : state) benchmark::DoNotOptimize(generic_realize(cycle_graph(n), lambda, tests));
}
BENCHMARK(BM_GenericRealizeCycle)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_CycleRealizeDoubled(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<double> lambda;
  for (int k = 0; k < m; ++k) lambda.insert(lambda.end(), 2, static_cast<double>(k * k));
  for (auto _ : state) benchmark::DoNotOptimize(cycle_realize(lambda));
}
BENCHMARK(BM_CycleRealizeDoubled)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SearchCompatible(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> g{n}, h{n - 3};
  for (auto _ : state) benchmark::DoNotOptimize(search_compatible_01(g, h));
}
BENCHMARK(BM_SearchCompatible)->DenseRange(5, 8);

void BM_JoinPaths(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> orders{n};
  const Diff2Pair p = construct_diff2(orders, orders);
  for (auto _ : state)
    benchmark::DoNotOptimize(join_two_eigenvalues(path_graph(n), path_graph(n), p.v, p.w, 0.0, 2.0));
}
BENCHMARK(BM_JoinPaths)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
