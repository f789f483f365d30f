#include <benchmark/benchmark.h>

#include <vector>

#include "psymet/rng.hpp"
#include "psymet/stats.hpp"

using namespace psymet;

static void BM_IncompleteBeta(benchmark::State& state) {
  double x = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(incomplete_beta(6.5, 0.5, x));
    x = x < 0.9 ? x + 1e-6 : 0.123;
  }
}
BENCHMARK(BM_IncompleteBeta);

static void BM_SpearmanTApprox(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(spearman(x, y));
  }
}
BENCHMARK(BM_SpearmanTApprox)->Arg(15)->Arg(100)->Arg(800);

static void BM_SpearmanExactPermutation(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = static_cast<double>(static_cast<int>(5 * rng.uniform01()));
    y[i] = static_cast<double>(static_cast<int>(5 * rng.uniform01()));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(spearman(x, y));
  }
}
BENCHMARK(BM_SpearmanExactPermutation)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
