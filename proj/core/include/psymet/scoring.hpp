#ifndef PSYMET_SCORING_HPP
#define PSYMET_SCORING_HPP

#include <utility>
#include <vector>

#include "psymet/item_bank.hpp"
#include "psymet/records.hpp"
#include "psymet/response_matrix.hpp"

namespace psymet {

// Binarizes raw submissions against the bank's gold labels. Columns are the
// bank's non-attention items in bank order; rows are sorted by respondent_id.
// Unanswered items are missing. Attention-check answers are dropped here;
// they only feed the validation protocol.
//
// Throws SchemaError when a record answers an unknown item, when records mix
// population tags, or when two records share a respondent_id (dedupe first).
ResponseMatrix score_responses(const std::vector<RawRecord>& records, const ItemBank& bank);

// Scores a single record against the bank without building a matrix.
// Returns {cells over non-attention bank items, attention fraction correct}.
// The attention fraction is empty when the record answered no attention item.
std::pair<std::vector<Cell>, std::optional<double>> score_record(const RawRecord& record,
                                                                 const ItemBank& bank);

// Restricts both matrices to the intersection of their item sets, ordered as
// in `a`. Respondent sets are unchanged. Throws SchemaError when the
// intersection is empty.
std::pair<ResponseMatrix, ResponseMatrix> align_items(const ResponseMatrix& a,
                                                      const ResponseMatrix& b);

// Keeps only the category's items; respondents left with no responses in the
// slice are dropped. Throws SchemaError for an unknown category.
ResponseMatrix slice_by_category(const ResponseMatrix& m, const std::string& category,
                                 const ItemBank& bank);

// Drops columns with zero non-missing cells; returns dropped item ids.
std::pair<ResponseMatrix, std::vector<std::string>> drop_unanswered_items(const ResponseMatrix& m);

}  // namespace psymet

#endif
