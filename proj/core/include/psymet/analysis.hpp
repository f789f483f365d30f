#ifndef PSYMET_ANALYSIS_HPP
#define PSYMET_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "psymet/agreement.hpp"
#include "psymet/clustering.hpp"
#include "psymet/config.hpp"
#include "psymet/ctt.hpp"
#include "psymet/item_bank.hpp"
#include "psymet/rasch.hpp"
#include "psymet/response_matrix.hpp"

namespace psymet {

struct AnalysisWarning {
  std::string code;
  std::string category;
  std::string population;
  std::string detail;
};

// Everything computed for one population within one category, on the
// category's common item set.
struct PopulationCategoryStats {
  PopulationTag population;
  DifficultyVector difficulty;
  std::optional<CorrelationMatrix> iic;
  std::optional<ClusterAssignment> clusters;
  std::optional<CoMembership> comember;
  std::optional<RaschFit> rasch;
  std::optional<ItemTotalCorrelation> item_total;
  std::optional<double> alpha;
};

struct CategoryAnalysis {
  std::string category;
  std::vector<std::string> common_items;
  int k = 0;  // cluster count applied to every population
  std::vector<PopulationCategoryStats> stats;  // reference first
  std::optional<AgreementReport> difficulty_agreement;
  std::optional<AgreementReport> comembership_agreement;
  std::optional<AgreementReport> rasch_agreement;
};

struct AnalysisResult {
  PopulationTag reference;
  std::vector<CategoryAnalysis> categories;
  std::vector<AnalysisWarning> warnings;
};

struct AnalyzeOptions {
  std::string reference_population;
  std::vector<std::string> categories;  // empty = all categories in the bank
  int cluster_k = 0;                    // 0 = silhouette-selected on the reference
  RaschOptions rasch;
  bool strict = false;  // escalate numerical trouble instead of warning
};

// The full cross-population comparison: per category, difficulty vectors,
// inter-item correlations, clusterings with co-membership, Rasch fits, and
// the three agreement tables against the reference. Analyses run on the
// items every population answered at least once; categories with fewer than
// 3 such items are skipped with a warning.
AnalysisResult run_analysis(const ItemBank& bank,
                            const std::vector<ResponseMatrix>& populations,
                            const AnalyzeOptions& options);

// Writes the result tree under out_dir (tables at the top, per-category
// intermediates below). Every file write is atomic, and file contents are
// deterministic functions of the result.
void write_analysis_outputs(const AnalysisResult& result, const std::string& out_dir);

// Gathers the three cross-category tables from a result.
std::vector<AgreementReport> difficulty_reports(const AnalysisResult& r);
std::vector<AgreementReport> comembership_reports(const AnalysisResult& r);
std::vector<AgreementReport> rasch_reports(const AnalysisResult& r);

// Filesystem-safe slug for category and population names.
std::string slugify(const std::string& name);

}  // namespace psymet

#endif
