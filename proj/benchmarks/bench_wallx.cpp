#include <benchmark/benchmark.h>

#include "wallx/blockO.hpp"
#include "wallx/galois.hpp"
#include "wallx/hypercube.hpp"
#include "wallx/ltensor.hpp"
#include "wallx/verify.hpp"
#include "wallx/weightmodel.hpp"

using namespace wallx;

static void BM_HypercubeVerma(benchmark::State& state) {
  BlockModule m = tensor_power(verma(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_hypercube(m, Sign::Minus, false));
}
BENCHMARK(BM_HypercubeVerma)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_HypercubeParallel(benchmark::State& state) {
  BlockModule m = tensor_power(verma(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_hypercube(m, Sign::Plus, true));
}
BENCHMARK(BM_HypercubeParallel)->Unit(benchmark::kMillisecond);

static void BM_Theta(benchmark::State& state) {
  BlockModule m = tensor(big_projective(), big_projective());
  for (auto _ : state) benchmark::DoNotOptimize(theta(3, m));
}
BENCHMARK(BM_Theta);

static void BM_Ordweight(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_ordweight(n, 2));
}
BENCHMARK(BM_Ordweight)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_FssDiagram(benchmark::State& state) {
  auto s = TriangulineSkeleton::standard(static_cast<int>(state.range(0)), 1, {});
  for (auto _ : state) benchmark::DoNotOptimize(fss_diagram(s));
}
BENCHMARK(BM_FssDiagram)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_WeightModelCompare(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(wm_compare("P", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_WeightModelCompare)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_AppendixSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("appendixA", 1, 100, false));
}
BENCHMARK(BM_AppendixSuite)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
