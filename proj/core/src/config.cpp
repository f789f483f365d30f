#include "psymet/config.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "psymet/errors.hpp"

namespace psymet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve(const fs::path& base_dir, const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (base_dir / p).lexically_normal().string();
}

SimulatePopulationSpec parse_sim_spec(const json& e, const std::string& where) {
  SimulatePopulationSpec s;
  s.name = e.at("name").get<std::string>();
  if (e.contains("kind")) {
    auto kind = parse_population_kind(e["kind"].get<std::string>());
    if (!kind) throw ConfigError(where + ": unknown population kind for '" + s.name + "'");
    s.kind = *kind;
  }
  s.model = e.value("model", "rasch");
  if (s.model != "rasch" && s.model != "guesser") {
    throw ConfigError(where + ": model must be 'rasch' or 'guesser', got '" + s.model + "'");
  }
  if (s.model == "guesser" && !e.contains("kind")) s.kind = PopulationKind::random;
  s.n_respondents = e.at("n_respondents").get<int>();
  s.theta_mean = e.value("theta_mean", 0.0);
  s.theta_sd = e.value("theta_sd", 1.0);
  s.n_choices = e.value("n_choices", 3);
  s.seed_offset = e.value("seed_offset", std::uint64_t{0});
  if (e.contains("true_b")) {
    const json& b = e["true_b"];
    if (b.is_array()) {
      s.true_b = b.get<std::vector<double>>();
    } else if (b.is_object()) {
      s.b_range = {b.at("min").get<double>(), b.at("max").get<double>()};
    } else {
      throw ConfigError(where + ": true_b must be an array or a {min, max} object");
    }
  }
  return s;
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
  const fs::path base = fs::absolute(fs::path(path)).parent_path();

  if (j.contains("item_bank")) cfg.item_bank = resolve(base, j["item_bank"].get<std::string>());
  if (j.contains("responses")) {
    cfg.responses.clear();
    for (const auto& p : j["responses"]) {
      cfg.responses.push_back(resolve(base, p.get<std::string>()));
    }
  }
  if (j.contains("reference_population")) {
    cfg.reference_population = j["reference_population"].get<std::string>();
  }
  if (j.contains("categories")) {
    cfg.categories = j["categories"].get<std::vector<std::string>>();
  }
  if (j.contains("output_dir")) cfg.output_dir = resolve(base, j["output_dir"].get<std::string>());
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("strict")) cfg.strict = j["strict"].get<bool>();

  if (j.contains("validation")) {
    const json& v = j["validation"];
    cfg.validation.reject_below = v.value("reject_below", cfg.validation.reject_below);
    cfg.validation.accept_above = v.value("accept_above", cfg.validation.accept_above);
    cfg.validation.attention_pass_min =
        v.value("attention_pass_min", cfg.validation.attention_pass_min);
    cfg.validation.min_justification_chars =
        v.value("min_justification_chars", cfg.validation.min_justification_chars);
    cfg.validation.duplicate_justification_max =
        v.value("duplicate_justification_max", cfg.validation.duplicate_justification_max);
    cfg.validation.auto_resolve_review =
        v.value("auto_resolve_review", cfg.validation.auto_resolve_review);
    cfg.validation.check();
  }
  if (j.contains("clustering")) {
    const json& c = j["clustering"];
    if (c.contains("k")) {
      if (c["k"].is_string()) {
        if (c["k"].get<std::string>() != "auto") {
          throw ConfigError(path + ": clustering.k must be a number or \"auto\"");
        }
        cfg.clustering.k = 0;
      } else {
        cfg.clustering.k = c["k"].get<int>();
      }
    }
    if (c.contains("linkage") && c["linkage"].get<std::string>() != "average") {
      throw ConfigError(path + ": only average linkage is supported");
    }
  }
  if (j.contains("irt")) {
    const json& r = j["irt"];
    cfg.irt.grid_points = r.value("grid_points", cfg.irt.grid_points);
    cfg.irt.estimate_discrimination =
        r.value("estimate_discrimination", cfg.irt.estimate_discrimination);
    cfg.irt.em_tol = r.value("em_tol", cfg.irt.em_tol);
    cfg.irt.newton_tol = r.value("newton_tol", cfg.irt.newton_tol);
    cfg.irt.max_em_iterations = r.value("max_em_iterations", cfg.irt.max_em_iterations);
  }
  if (j.contains("simulate")) {
    const json& s = j["simulate"];
    if (s.contains("output")) cfg.simulate_output = resolve(base, s["output"].get<std::string>());
    if (s.contains("populations")) {
      cfg.simulate.clear();
      for (const auto& e : s["populations"]) cfg.simulate.push_back(parse_sim_spec(e, path));
    }
  }
}

}  // namespace psymet
