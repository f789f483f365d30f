#include "psymet/simulate.hpp"

#include <cstdio>
#include <stdexcept>

#include "psymet/rasch.hpp"
#include "psymet/rng.hpp"

namespace psymet {

namespace {

std::vector<std::string> respondent_ids(const std::string& prefix, int n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  char buf[32];
  for (int r = 0; r < n; ++r) {
    std::snprintf(buf, sizeof(buf), "%04d", r + 1);
    ids.push_back(prefix + "_" + buf);
  }
  return ids;
}

}  // namespace

ResponseMatrix generate_rasch_population(const GenerativeSpec& spec,
                                         const std::vector<std::string>& item_ids,
                                         const PopulationTag& population) {
  if (spec.n_respondents < 1) {
    throw std::invalid_argument("generate_rasch_population: need at least 1 respondent");
  }
  if (!(spec.theta_sd > 0.0)) {
    throw std::invalid_argument("generate_rasch_population: theta_sd must be positive");
  }
  if (spec.true_b.size() != item_ids.size()) {
    throw std::invalid_argument("generate_rasch_population: true_b/item count mismatch");
  }

  Rng rng(spec.seed);
  const std::size_t k = item_ids.size();
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(spec.n_respondents) * k);
  for (int r = 0; r < spec.n_respondents; ++r) {
    const double theta = rng.normal(spec.theta_mean, spec.theta_sd);
    for (std::size_t i = 0; i < k; ++i) {
      cells.push_back(rng.bernoulli(rasch_icc(theta, spec.true_b[i])) ? 1 : 0);
    }
  }
  return ResponseMatrix(population, respondent_ids(population.name, spec.n_respondents),
                        item_ids, std::move(cells));
}

ResponseMatrix generate_random_guessers(int n_respondents,
                                        const std::vector<std::string>& item_ids,
                                        int n_choices, std::uint64_t seed,
                                        const PopulationTag& population) {
  if (n_respondents < 1) {
    throw std::invalid_argument("generate_random_guessers: need at least 1 respondent");
  }
  if (n_choices < 1) {
    throw std::invalid_argument("generate_random_guessers: n_choices must be >= 1");
  }
  Rng rng(seed);
  const double p = 1.0 / n_choices;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n_respondents) * item_ids.size());
  for (int r = 0; r < n_respondents; ++r) {
    for (std::size_t i = 0; i < item_ids.size(); ++i) {
      cells.push_back(rng.bernoulli(p) ? 1 : 0);
    }
  }
  return ResponseMatrix(population, respondent_ids(population.name, n_respondents), item_ids,
                        std::move(cells));
}

}  // namespace psymet
