#ifndef PSYMET_SIMULATE_HPP
#define PSYMET_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "psymet/response_matrix.hpp"

namespace psymet {

struct GenerativeSpec {
  int n_respondents = 0;
  std::vector<double> true_b;  // aligned with the item ids passed alongside
  double theta_mean = 0.0;
  double theta_sd = 1.0;
  std::uint64_t seed = 0;
  int n_choices = 3;  // guesser model only
};

// Draws theta_r ~ N(theta_mean, theta_sd^2) and fills cell (r, i) ~
// Bernoulli(P(theta_r; b_i)) under the unit-discrimination curve. Fully
// deterministic per seed; cell draws go row by row, column by column.
// Respondent ids are "<prefix>0001".. where prefix is the population name.
ResponseMatrix generate_rasch_population(const GenerativeSpec& spec,
                                         const std::vector<std::string>& item_ids,
                                         const PopulationTag& population);

// Every cell independently correct with probability 1/n_choices.
ResponseMatrix generate_random_guessers(int n_respondents,
                                        const std::vector<std::string>& item_ids,
                                        int n_choices, std::uint64_t seed,
                                        const PopulationTag& population);

}  // namespace psymet

#endif
