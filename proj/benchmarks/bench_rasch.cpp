#include <benchmark/benchmark.h>

#include "psymet/rasch.hpp"
#include "psymet/simulate.hpp"

using namespace psymet;

namespace {

ResponseMatrix simulated(int n, int k, std::uint64_t seed) {
  GenerativeSpec spec;
  spec.n_respondents = n;
  spec.seed = seed;
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) {
    ids.push_back("q" + std::to_string(i));
    spec.true_b.push_back(-2.0 + 4.0 * i / std::max(1, k - 1));
  }
  return generate_rasch_population(spec, ids, {"bench", PopulationKind::synthetic});
}

}  // namespace

static void BM_FitRasch(benchmark::State& state) {
  const ResponseMatrix m =
      simulated(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_rasch_mml(m));
  }
}
BENCHMARK(BM_FitRasch)->Args({100, 15})->Args({500, 15})->Args({500, 30})
    ->Unit(benchmark::kMillisecond);

static void BM_FitRaschEstimatedDiscrimination(benchmark::State& state) {
  const ResponseMatrix m = simulated(200, 15, 7);
  RaschOptions opt;
  opt.estimate_discrimination = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_rasch_mml(m, opt));
  }
}
BENCHMARK(BM_FitRaschEstimatedDiscrimination)->Unit(benchmark::kMillisecond);

static void BM_EapAbilities(benchmark::State& state) {
  const ResponseMatrix m = simulated(500, 15, 3);
  const RaschFit fit = fit_rasch_mml(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eap_abilities(fit, m));
  }
}
BENCHMARK(BM_EapAbilities)->Unit(benchmark::kMillisecond);

static void BM_GaussHermite(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_hermite_normal(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GaussHermite)->Arg(21)->Arg(61)->Arg(101);
