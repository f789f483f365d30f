#include <benchmark/benchmark.h>

#include "psymet/clustering.hpp"
#include "psymet/rng.hpp"

using namespace psymet;

namespace {

DistanceMatrix random_distances(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("it" + std::to_string(i));
  std::vector<double> vals(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      vals[i * n + j] = vals[j * n + i] = 0.05 + 1.9 * rng.uniform01();
    }
  }
  return DistanceMatrix(ids, vals);
}

}  // namespace

static void BM_Agglomerate(benchmark::State& state) {
  const DistanceMatrix d = random_distances(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(agglomerate(d, 4));
  }
}
BENCHMARK(BM_Agglomerate)->Arg(15)->Arg(50)->Arg(120)->Unit(benchmark::kMicrosecond);

static void BM_SelectK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DistanceMatrix d = random_distances(n, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_k(d, 2, n - 1));
  }
}
BENCHMARK(BM_SelectK)->Arg(15)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Comembership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DistanceMatrix d = random_distances(n, 7);
  const ClusterAssignment a = agglomerate(d, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(comembership(a));
  }
}
BENCHMARK(BM_Comembership)->Arg(15)->Arg(120)->Unit(benchmark::kMicrosecond);
