#ifndef PSYMET_IO_HPP
#define PSYMET_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "psymet/agreement.hpp"
#include "psymet/clustering.hpp"
#include "psymet/ctt.hpp"
#include "psymet/item_bank.hpp"
#include "psymet/rasch.hpp"
#include "psymet/records.hpp"
#include "psymet/response_matrix.hpp"
#include "psymet/validation.hpp"

namespace psymet {

// ---- readers ----

// Item bank from CSV (columns item_id, category, gold_label, premise,
// hypothesis, is_attention_check) or a JSON array of the same fields,
// chosen by file extension.
ItemBank load_item_bank(const std::string& path);

// Long-format responses: one row per (respondent, item) with columns
// respondent_id, population, item_id, label and optional justification,
// submission_index, identity_keys (';'-separated), population_kind.
// Rows sharing (population, respondent_id, submission_index) form one
// record. "rid:<respondent_id>" is always added as an identity key.
// JSON input is an array of record objects instead.
std::vector<RawRecord> load_responses(const std::string& path);

// Stable grouping by population name (first-appearance order).
std::vector<std::pair<PopulationTag, std::vector<RawRecord>>> group_by_population(
    const std::vector<RawRecord>& records);

// ---- writers (all atomic: temp file + rename) ----

void atomic_write(const std::string& path, const std::string& content);

std::string responses_to_csv(const std::vector<RawRecord>& records);
// Re-expresses a scored matrix in the response schema: correct cells carry
// the gold label, incorrect cells the next label cyclically.
std::string matrix_to_response_csv(const ResponseMatrix& m, const ItemBank& bank);

std::string audit_to_csv(const std::vector<ValidationVerdict>& verdicts);
std::string audit_to_json(const std::vector<ValidationVerdict>& verdicts);

std::string difficulty_to_csv(const DifficultyVector& d);
std::string correlation_to_csv(const CorrelationMatrix& c);
std::string correlation_counts_to_csv(const CorrelationMatrix& c);
std::string clusters_to_csv(const ClusterAssignment& a);
std::string dendrogram_to_json(const ClusterAssignment& a, const PopulationTag& population);
std::string rasch_to_csv(const RaschFit& fit);
std::string rasch_to_json(const RaschFit& fit);

std::string agreement_to_csv(const std::vector<AgreementReport>& reports);
std::string agreement_to_json(const std::vector<AgreementReport>& reports);
// Report layout: one row per category, one column per proxy population,
// stars inline, best cell bolded.
std::string agreement_to_markdown(const std::vector<AgreementReport>& reports,
                                  const std::string& title);

// Reads back machine-readable outputs (used by `report` and by tests).
std::vector<AgreementReport> load_agreement_json(const std::string& path);
DifficultyVector load_difficulty_csv(const std::string& path);
std::map<std::string, int> load_clusters_csv(const std::string& path);
std::pair<std::vector<std::string>, std::vector<double>> load_rasch_csv(const std::string& path);

// Full-precision decimal rendering that round-trips doubles.
std::string format_double(double v);

}  // namespace psymet

#endif
