// psymet: psychometric item properties and cross-population agreement.
//
// Subcommands:
//   validate  apply the response authentication protocol, emit audit logs
//   simulate  generate synthetic populations from the config
//   analyze   full comparison pipeline, emit agreement tables + intermediates
//   report    re-render markdown tables from an analyze output directory

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "psymet/analysis.hpp"
#include "psymet/config.hpp"
#include "psymet/errors.hpp"
#include "psymet/io.hpp"
#include "psymet/scoring.hpp"
#include "psymet/simulate.hpp"
#include "psymet/validation.hpp"

namespace fs = std::filesystem;
using namespace psymet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;

std::vector<RawRecord> load_all_responses(const RunConfig& cfg) {
  if (cfg.responses.empty()) throw ConfigError("no response files given");
  std::vector<RawRecord> all;
  for (const std::string& path : cfg.responses) {
    auto part = load_responses(path);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

int cmd_validate(const RunConfig& cfg) {
  const ItemBank bank = load_item_bank(cfg.item_bank);
  const auto records = load_all_responses(cfg);

  std::vector<RawRecord> accepted;
  std::vector<ValidationVerdict> audit;
  for (auto& [tag, group] : group_by_population(records)) {
    ProtocolResult res = run_protocol(group, bank, cfg.validation);
    accepted.insert(accepted.end(), std::make_move_iterator(res.accepted.begin()),
                    std::make_move_iterator(res.accepted.end()));
    audit.insert(audit.end(), std::make_move_iterator(res.audit.begin()),
                 std::make_move_iterator(res.audit.end()));
  }

  const fs::path out(cfg.output_dir);
  atomic_write((out / "accepted_responses.csv").string(), responses_to_csv(accepted));
  atomic_write((out / "audit.csv").string(), audit_to_csv(audit));
  atomic_write((out / "audit.json").string(), audit_to_json(audit));

  int rejected = 0, review = 0;
  std::vector<ValidationVerdict> unresolved;
  for (const ValidationVerdict& v : audit) {
    if (v.decision == Decision::rejected) ++rejected;
    if (v.decision == Decision::needs_review) {
      ++review;
      unresolved.push_back(v);
    }
  }
  if (!unresolved.empty()) {
    atomic_write((out / "needs_review.csv").string(), audit_to_csv(unresolved));
  }
  std::cout << "validate: " << records.size() << " records, " << accepted.size()
            << " accepted, " << rejected << " rejected, " << review << " needing review\n"
            << "outputs in " << out.string() << "\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.simulate.empty()) {
    throw ConfigError("simulate: config has no simulate.populations");
  }
  const ItemBank bank = load_item_bank(cfg.item_bank);
  const std::vector<std::string> items = bank.item_ids(false);
  if (items.empty()) throw ConfigError("simulate: item bank has no scorable items");

  std::string csv;
  for (const SimulatePopulationSpec& spec : cfg.simulate) {
    const PopulationTag tag{spec.name, spec.kind};
    ResponseMatrix m = [&] {
      if (spec.model == "guesser") {
        return generate_random_guessers(spec.n_respondents, items, spec.n_choices,
                                        cfg.seed + spec.seed_offset, tag);
      }
      GenerativeSpec g;
      g.n_respondents = spec.n_respondents;
      g.theta_mean = spec.theta_mean;
      g.theta_sd = spec.theta_sd;
      g.seed = cfg.seed + spec.seed_offset;
      g.n_choices = spec.n_choices;
      if (!spec.true_b.empty()) {
        g.true_b = spec.true_b;
      } else if (spec.b_range) {
        const auto [lo, hi] = *spec.b_range;
        const std::size_t k = items.size();
        g.true_b.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
          g.true_b[i] = k == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (k - 1);
        }
      } else {
        throw ConfigError("simulate: population '" + spec.name +
                          "' needs true_b (array or {min,max})");
      }
      return generate_rasch_population(g, items, tag);
    }();
    const std::string part = matrix_to_response_csv(m, bank);
    if (csv.empty()) {
      csv = part;
    } else {
      csv += part.substr(part.find('\n') + 1);  // drop repeated header
    }
  }
  atomic_write(cfg.simulate_output, csv);
  std::cout << "simulate: wrote " << cfg.simulate.size() << " populations to "
            << cfg.simulate_output << "\n";
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg) {
  const ItemBank bank = load_item_bank(cfg.item_bank);
  const auto records = load_all_responses(cfg);

  std::vector<ResponseMatrix> matrices;
  for (auto& [tag, group] : group_by_population(records)) {
    matrices.push_back(score_responses(group, bank));
  }

  AnalyzeOptions opt;
  opt.reference_population = cfg.reference_population;
  opt.categories = cfg.categories;
  opt.cluster_k = cfg.clustering.k;
  opt.rasch = cfg.irt;
  opt.strict = cfg.strict;

  const AnalysisResult result = run_analysis(bank, matrices, opt);
  write_analysis_outputs(result, cfg.output_dir);

  std::cout << "analyze: " << result.categories.size() << " categories, "
            << result.warnings.size() << " warnings\noutputs in " << cfg.output_dir << "\n";
  return kExitOk;
}

int cmd_report(const std::string& in_dir, const std::string& table) {
  const fs::path root(in_dir);
  const std::vector<std::pair<std::string, std::string>> tables = {
      {"difficulty", "Difficulty agreement (proportion correct)"},
      {"comembership", "Cluster co-membership agreement"},
      {"rasch", "Rasch difficulty agreement"}};
  bool any = false;
  for (const auto& [name, title] : tables) {
    if (table != "all" && table != name) continue;
    const fs::path path = root / (name + "_agreement.json");
    if (!fs::exists(path)) {
      throw ConfigError("report: missing " + path.string() + " (run analyze first)");
    }
    std::cout << agreement_to_markdown(load_agreement_json(path.string()), title) << "\n";
    any = true;
  }
  if (!any) throw ConfigError("report: unknown table '" + table + "'");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psychometric item properties and cross-population agreement"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path,
                    "JSON config file; its values override the flags");
    sub->add_option("--bank", cfg.item_bank, "item bank CSV/JSON");
    sub->add_option("--out-dir", cfg.output_dir, "output directory");
    sub->add_option("--seed", cfg.seed, "run seed");
    sub->add_flag("--strict", cfg.strict, "treat numerical trouble as fatal (exit 3)");
  };

  CLI::App* validate = app.add_subcommand("validate", "authenticate raw responses");
  add_common(validate);
  validate->add_option("--responses", cfg.responses, "response files (long CSV or JSON)");
  validate->add_option("--reject-below", cfg.validation.reject_below,
                       "reject overall scores strictly below this");
  validate->add_option("--accept-above", cfg.validation.accept_above,
                       "accept overall scores strictly above this");
  validate->add_option("--attention-pass-min", cfg.validation.attention_pass_min,
                       "mid-band records need at least this attention fraction");
  validate->add_option("--min-justification-chars", cfg.validation.min_justification_chars,
                       "shorter justifications are flagged");
  validate->add_option("--duplicate-justification-max",
                       cfg.validation.duplicate_justification_max,
                       "allowed repeats of one normalized justification");
  validate->add_flag("!--no-auto-review", cfg.validation.auto_resolve_review,
                     "leave mid-band records as needs_review instead of applying flags");

  CLI::App* analyze = app.add_subcommand("analyze", "run the comparison pipeline");
  add_common(analyze);
  analyze->add_option("--responses", cfg.responses, "validated response files");
  analyze->add_option("--reference", cfg.reference_population, "reference population name");
  analyze->add_option("--categories", cfg.categories, "restrict to these categories");
  analyze->add_option("--cluster-k", cfg.clustering.k,
                      "fixed cluster count (0 = silhouette-selected)");
  analyze->add_option("--grid-points", cfg.irt.grid_points, "quadrature grid size");
  analyze->add_flag("--estimate-discrimination", cfg.irt.estimate_discrimination,
                    "estimate one shared discrimination instead of fixing it at 1");

  CLI::App* simulate = app.add_subcommand("simulate", "generate synthetic populations");
  add_common(simulate);

  CLI::App* report = app.add_subcommand("report", "render markdown tables from analyze output");
  std::string report_dir = "out", report_table = "all";
  report->add_option("--in", report_dir, "analyze output directory");
  report->add_option("--table", report_table, "difficulty | comembership | rasch | all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (validate->parsed()) return cmd_validate(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (report->parsed()) return cmd_report(report_dir, report_table);
  } catch (const SchemaError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
