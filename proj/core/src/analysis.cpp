#include "psymet/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "psymet/errors.hpp"
#include "psymet/io.hpp"
#include "psymet/scoring.hpp"
#include "psymet/stats.hpp"

namespace psymet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ResponseMatrix restrict_to_items(const ResponseMatrix& m,
                                 const std::vector<std::string>& ids) {
  std::vector<std::size_t> cols;
  cols.reserve(ids.size());
  for (const std::string& id : ids) cols.push_back(*m.item_index(id));
  std::vector<Cell> cells;
  cells.reserve(m.n_respondents() * ids.size());
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    for (std::size_t c : cols) cells.push_back(m.cell(r, c));
  }
  return ResponseMatrix(m.population(), m.respondent_ids(), ids, std::move(cells));
}

void flag_best_row(std::vector<AgreementRow>& rows) {
  double best = -1.0;
  for (const AgreementRow& r : rows) {
    if (r.defined) best = std::max(best, std::fabs(r.r));
  }
  for (AgreementRow& r : rows) {
    if (best >= 0.0 && r.defined && std::fabs(r.r) == best) {
      r.best = true;
      return;
    }
  }
}

}  // namespace

std::string slugify(const std::string& name) {
  std::string out;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "unnamed" : out;
}

AnalysisResult run_analysis(const ItemBank& bank,
                            const std::vector<ResponseMatrix>& populations,
                            const AnalyzeOptions& options) {
  if (populations.size() < 2) {
    throw ConfigError("analysis needs at least two populations");
  }
  const ResponseMatrix* reference = nullptr;
  std::vector<const ResponseMatrix*> proxies;
  for (const ResponseMatrix& m : populations) {
    if (m.population().name == options.reference_population) {
      reference = &m;
    } else {
      proxies.push_back(&m);
    }
  }
  if (!reference) {
    throw ConfigError("reference population '" + options.reference_population +
                      "' not present in the data");
  }

  AnalysisResult result;
  result.reference = reference->population();

  std::vector<std::string> categories =
      options.categories.empty() ? bank.categories() : options.categories;

  for (const std::string& category : categories) {
    if (!bank.has_category(category)) {
      throw ConfigError("unknown category '" + category + "'");
    }
    // Per population: category slice, then drop items nobody answered.
    std::vector<ResponseMatrix> sliced;
    std::vector<const ResponseMatrix*> members{reference};
    members.insert(members.end(), proxies.begin(), proxies.end());
    bool skip = false;
    for (const ResponseMatrix* m : members) {
      ResponseMatrix s = slice_by_category(*m, category, bank);
      auto [trimmed, dropped] = drop_unanswered_items(s);
      for (const std::string& id : dropped) {
        result.warnings.push_back({"item_without_responses", category, m->population().name,
                                   "item '" + id + "' has no responses and was dropped"});
      }
      if (trimmed.n_respondents() == 0 || trimmed.n_items() == 0) {
        result.warnings.push_back({"empty_population_slice", category, m->population().name,
                                   "no responses in this category; category skipped"});
        skip = true;
        break;
      }
      sliced.push_back(std::move(trimmed));
    }
    if (skip) continue;

    // Common item set, bank order.
    std::vector<std::string> common;
    for (const std::string& id : sliced.front().item_ids()) {
      bool everywhere = true;
      for (std::size_t p = 1; p < sliced.size(); ++p) {
        if (!sliced[p].item_index(id)) {
          everywhere = false;
          break;
        }
      }
      if (everywhere) common.push_back(id);
    }
    if (common.size() < 3) {
      result.warnings.push_back(
          {"too_few_shared_items", category, "",
           "only " + std::to_string(common.size()) +
               " items shared by all populations (need 3); category skipped"});
      continue;
    }

    CategoryAnalysis cat;
    cat.category = category;
    cat.common_items = common;

    for (ResponseMatrix& s : sliced) {
      PopulationCategoryStats st;
      ResponseMatrix m = restrict_to_items(s, common);
      st.population = m.population();
      st.difficulty = proportion_correct(m);
      st.iic = inter_item_correlation(m);
      if (m.n_items() >= 2 && m.n_respondents() >= 3) {
        st.item_total = item_total_correlation(m);
        st.alpha = cronbach_alpha(m);
      }
      try {
        st.rasch = fit_rasch_mml(m, options.rasch);
        if (!st.rasch->converged) {
          if (options.strict) {
            throw NumericError("rasch fit did not converge for population '" +
                               m.population().name + "' in category '" + category + "'");
          }
          result.warnings.push_back({"rasch_not_converged", category, m.population().name,
                                     "EM stopped at iteration limit"});
        }
        for (const DroppedItem& d : st.rasch->dropped_items) {
          result.warnings.push_back({"rasch_item_dropped", category, m.population().name,
                                     "item '" + d.item_id + "': " + d.reason});
        }
      } catch (const NumericError& e) {
        if (options.strict) throw;
        result.warnings.push_back({"rasch_failed", category, m.population().name, e.what()});
      }
      cat.stats.push_back(std::move(st));
    }

    // Clustering with one k across populations, chosen on the reference.
    // In strict mode undefined correlations abort here; otherwise they map
    // to distance 1 and show up as warnings.
    const std::size_t n = common.size();
    std::vector<DistanceMatrix> distances;
    for (PopulationCategoryStats& st : cat.stats) {
      std::vector<std::string> distance_warnings;
      distances.push_back(iic_distance(*st.iic, options.strict, &distance_warnings));
      for (const std::string& w : distance_warnings) {
        result.warnings.push_back({"undefined_correlation", category, st.population.name, w});
      }
    }
    int k = options.cluster_k;
    if (k == 0) {
      k = select_k(distances.front(), 2, static_cast<int>(n) - 1);
    } else if (k < 1 || k > static_cast<int>(n)) {
      throw ConfigError("clustering k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(n) + "] for category '" + category + "'");
    }
    cat.k = k;
    for (std::size_t p = 0; p < cat.stats.size(); ++p) {
      cat.stats[p].clusters = agglomerate(distances[p], k);
      cat.stats[p].comember = comembership(*cat.stats[p].clusters, cat.stats[p].population);
    }

    // Difficulty agreement (rank correlation, reference vs each proxy).
    {
      std::vector<DifficultyVector> proxy_difficulty;
      for (std::size_t p = 1; p < cat.stats.size(); ++p) {
        proxy_difficulty.push_back(cat.stats[p].difficulty);
      }
      cat.difficulty_agreement =
          compare_populations(cat.stats.front().difficulty, proxy_difficulty, category);
    }

    // Co-membership agreement (Pearson over item pairs).
    {
      std::vector<CoMembership> proxy_members;
      for (std::size_t p = 1; p < cat.stats.size(); ++p) {
        proxy_members.push_back(*cat.stats[p].comember);
      }
      cat.comembership_agreement =
          compare_populations(*cat.stats.front().comember, proxy_members, category);
    }

    // Rasch-b agreement: pairwise on the items retained by both fits.
    if (cat.stats.front().rasch) {
      const RaschFit& ref_fit = *cat.stats.front().rasch;
      AgreementReport report;
      report.category = category;
      report.reference = result.reference;
      report.property = "rasch_b";
      for (std::size_t p = 1; p < cat.stats.size(); ++p) {
        AgreementRow row;
        row.population = cat.stats[p].population;
        row.coefficient = CoefficientKind::pearson;
        if (!cat.stats[p].rasch) {
          row.defined = false;
          row.r = row.p = std::nan("");
          row.note = "no rasch fit";
          report.rows.push_back(std::move(row));
          continue;
        }
        const RaschFit& fit = *cat.stats[p].rasch;
        DifficultyVector ref_sub, proxy_sub;
        ref_sub.population = ref_fit.population;
        proxy_sub.population = fit.population;
        ref_sub.kind = proxy_sub.kind = DifficultyKind::rasch_b;
        for (std::size_t i = 0; i < ref_fit.item_ids.size(); ++i) {
          const std::string& id = ref_fit.item_ids[i];
          auto pos = std::find(fit.item_ids.begin(), fit.item_ids.end(), id);
          if (pos == fit.item_ids.end()) continue;
          ref_sub.item_ids.push_back(id);
          ref_sub.values.push_back(ref_fit.b[i]);
          proxy_sub.item_ids.push_back(id);
          proxy_sub.values.push_back(fit.b[static_cast<std::size_t>(pos - fit.item_ids.begin())]);
        }
        if (ref_sub.item_ids.size() < 3) {
          row.defined = false;
          row.r = row.p = std::nan("");
          row.note = "fewer than 3 items retained by both fits";
          result.warnings.push_back({"rasch_overlap_too_small", category, row.population.name,
                                     "only " + std::to_string(ref_sub.item_ids.size()) +
                                         " items retained by both fits"});
        } else {
          const AgreementReport one = compare_populations(ref_sub, {proxy_sub}, category);
          row = one.rows.front();
          row.best = false;
        }
        report.rows.push_back(std::move(row));
      }
      flag_best_row(report.rows);
      cat.rasch_agreement = std::move(report);
    }

    result.categories.push_back(std::move(cat));
  }
  return result;
}

std::vector<AgreementReport> difficulty_reports(const AnalysisResult& r) {
  std::vector<AgreementReport> out;
  for (const CategoryAnalysis& c : r.categories) {
    if (c.difficulty_agreement) out.push_back(*c.difficulty_agreement);
  }
  return out;
}

std::vector<AgreementReport> comembership_reports(const AnalysisResult& r) {
  std::vector<AgreementReport> out;
  for (const CategoryAnalysis& c : r.categories) {
    if (c.comembership_agreement) out.push_back(*c.comembership_agreement);
  }
  return out;
}

std::vector<AgreementReport> rasch_reports(const AnalysisResult& r) {
  std::vector<AgreementReport> out;
  for (const CategoryAnalysis& c : r.categories) {
    if (c.rasch_agreement) out.push_back(*c.rasch_agreement);
  }
  return out;
}

void write_analysis_outputs(const AnalysisResult& result, const std::string& out_dir) {
  const fs::path root(out_dir);
  fs::create_directories(root);

  const auto diff = difficulty_reports(result);
  const auto comem = comembership_reports(result);
  const auto rasch = rasch_reports(result);
  atomic_write((root / "difficulty_agreement.csv").string(), agreement_to_csv(diff));
  atomic_write((root / "difficulty_agreement.json").string(), agreement_to_json(diff));
  atomic_write((root / "difficulty_agreement.md").string(),
               agreement_to_markdown(diff, "Difficulty agreement (proportion correct)"));
  atomic_write((root / "comembership_agreement.csv").string(), agreement_to_csv(comem));
  atomic_write((root / "comembership_agreement.json").string(), agreement_to_json(comem));
  atomic_write((root / "comembership_agreement.md").string(),
               agreement_to_markdown(comem, "Cluster co-membership agreement"));
  atomic_write((root / "rasch_agreement.csv").string(), agreement_to_csv(rasch));
  atomic_write((root / "rasch_agreement.json").string(), agreement_to_json(rasch));
  atomic_write((root / "rasch_agreement.md").string(),
               agreement_to_markdown(rasch, "Rasch difficulty agreement"));

  json warnings = json::array();
  for (const AnalysisWarning& w : result.warnings) {
    warnings.push_back({{"code", w.code},
                        {"category", w.category},
                        {"population", w.population},
                        {"detail", w.detail}});
  }
  atomic_write((root / "warnings.json").string(), warnings.dump(2) + "\n");

  json summary;
  summary["reference"] = result.reference.name;
  summary["reference_kind"] = to_string(result.reference.kind);
  json cats = json::array();
  for (const CategoryAnalysis& c : result.categories) {
    json populations = json::array();
    for (const PopulationCategoryStats& st : c.stats) {
      json pop;
      pop["name"] = st.population.name;
      pop["kind"] = to_string(st.population.kind);
      pop["cronbach_alpha"] = st.alpha ? json(*st.alpha) : json();
      pop["rasch_converged"] = st.rasch ? json(st.rasch->converged) : json();
      populations.push_back(std::move(pop));
    }
    cats.push_back({{"category", c.category},
                    {"common_items", c.common_items},
                    {"k", c.k},
                    {"populations", populations}});
  }
  summary["categories"] = cats;
  atomic_write((root / "summary.json").string(), summary.dump(2) + "\n");

  for (const CategoryAnalysis& c : result.categories) {
    const fs::path dir = root / "categories" / slugify(c.category);
    fs::create_directories(dir);
    for (const PopulationCategoryStats& st : c.stats) {
      const std::string pop = slugify(st.population.name);
      atomic_write((dir / ("difficulty_" + pop + ".csv")).string(),
                   difficulty_to_csv(st.difficulty));
      if (st.iic) {
        atomic_write((dir / ("iic_" + pop + ".csv")).string(), correlation_to_csv(*st.iic));
        atomic_write((dir / ("iic_counts_" + pop + ".csv")).string(),
                     correlation_counts_to_csv(*st.iic));
      }
      if (st.clusters) {
        atomic_write((dir / ("clusters_" + pop + ".csv")).string(),
                     clusters_to_csv(*st.clusters));
        atomic_write((dir / ("dendrogram_" + pop + ".json")).string(),
                     dendrogram_to_json(*st.clusters, st.population));
      }
      if (st.rasch) {
        atomic_write((dir / ("rasch_" + pop + ".csv")).string(), rasch_to_csv(*st.rasch));
        atomic_write((dir / ("rasch_" + pop + ".json")).string(), rasch_to_json(*st.rasch));
      }
      if (st.item_total) {
        std::string csv = "item_id,item_total_corrected,item_total_uncorrected\n";
        for (std::size_t i = 0; i < st.item_total->item_ids.size(); ++i) {
          const auto& corr = st.item_total->corrected[i];
          const auto& unc = st.item_total->uncorrected[i];
          csv += st.item_total->item_ids[i];
          csv += ',';
          csv += corr ? format_double(*corr) : "";
          csv += ',';
          csv += unc ? format_double(*unc) : "";
          csv += '\n';
        }
        atomic_write((dir / ("item_total_" + pop + ".csv")).string(), csv);
      }
    }
  }
}

}  // namespace psymet
