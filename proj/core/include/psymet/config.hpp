#ifndef PSYMET_CONFIG_HPP
#define PSYMET_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psymet/rasch.hpp"
#include "psymet/records.hpp"
#include "psymet/validation.hpp"

namespace psymet {

// One population to generate with `simulate`.
struct SimulatePopulationSpec {
  std::string name;
  PopulationKind kind = PopulationKind::synthetic;
  std::string model = "rasch";  // "rasch" | "guesser"
  int n_respondents = 0;
  double theta_mean = 0.0;
  double theta_sd = 1.0;
  std::vector<double> true_b;  // explicit per-item difficulties, or
  std::optional<std::pair<double, double>> b_range;  // evenly spaced over the bank
  int n_choices = 3;
  std::uint64_t seed_offset = 0;  // population seed = run seed + offset
};

struct ClusteringConfig {
  int k = 0;  // 0 = choose k on the reference population by silhouette
};

// Everything a run needs; flags fill it first, then a config file (when
// given) overrides field by field.
struct RunConfig {
  std::string item_bank;
  std::vector<std::string> responses;
  std::string reference_population;
  std::vector<std::string> categories;  // empty = every category in the bank
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  bool strict = false;
  ValidationConfig validation;
  ClusteringConfig clustering;
  RaschOptions irt;
  std::vector<SimulatePopulationSpec> simulate;
  std::string simulate_output = "simulated_responses.csv";
};

// Loads a JSON config over `base`. Relative paths in the file resolve
// against the file's directory. Throws ConfigError / SchemaError.
void apply_config_file(RunConfig& base, const std::string& path);

}  // namespace psymet

#endif
