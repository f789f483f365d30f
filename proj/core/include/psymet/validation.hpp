#ifndef PSYMET_VALIDATION_HPP
#define PSYMET_VALIDATION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psymet/item_bank.hpp"
#include "psymet/records.hpp"
#include "psymet/response_matrix.hpp"

namespace psymet {

struct ValidationConfig {
  double reject_below = 0.40;       // overall score strictly below -> reject
  double accept_above = 0.60;       // overall score strictly above -> accept
  double attention_pass_min = 0.75; // strictly below -> reject mid-band scores
  int min_justification_chars = 10;
  int duplicate_justification_max = 1;  // allowed uses of one normalized text
  // When false, records that reach the justification stage are reported as
  // needs_review instead of being auto-resolved by the flags.
  bool auto_resolve_review = true;

  void check() const;  // throws ConfigError on inconsistent thresholds
};

enum class Decision { accepted, rejected, needs_review };

const char* to_string(Decision d);

struct ValidationVerdict {
  std::string respondent_id;
  int submission_index = 0;
  std::string population;
  Decision decision = Decision::accepted;
  std::vector<std::string> triggered_rules;
  std::map<std::string, std::string> evidence;  // rule id (or "info") -> text
};

enum class JustificationFlag { copied_question_text, repeated_justification, too_short, empty };

const char* to_string(JustificationFlag flag);

// Step 1: identity_keys collisions keep only the smallest submission_index.
// Returns survivors plus one rejection verdict per discarded record, with a
// rule per colliding key.
std::pair<std::vector<RawRecord>, std::vector<ValidationVerdict>> dedupe(
    const std::vector<RawRecord>& records);

// Step 2: the score gate over one scored row (attention checks excluded from
// the overall score). Scores in the closed middle band fall through to the
// justification stage unless the attention fraction is strictly below the
// minimum. Missing attention data passes the attention test (absence is not
// evidence of bad faith).
ValidationVerdict score_gate(const RawRecord& record, const std::vector<Cell>& scored_row,
                             std::optional<double> attention_fraction,
                             const ValidationConfig& cfg);

// Step 3: mechanical justification checks. copied_question_text fires when a
// justification of >= 15 characters appears verbatim inside the item's
// premise or hypothesis; repeated_justification when one normalized text
// (lowercased, punctuation stripped, whitespace collapsed) covers more than
// duplicate_justification_max items.
std::vector<JustificationFlag> justification_flags(const RawRecord& record,
                                                   const ItemBank& bank,
                                                   const ValidationConfig& cfg);

struct ProtocolResult {
  std::vector<RawRecord> accepted;
  std::vector<ValidationVerdict> audit;  // ordered by (respondent_id, submission_index)
};

// Full pipeline: dedupe, score gate, then flags for the middle band. The
// audit log covers every input record.
ProtocolResult run_protocol(const std::vector<RawRecord>& records, const ItemBank& bank,
                            const ValidationConfig& cfg);

// Normalization used for repeated-justification detection; exposed for tests.
std::string normalize_justification(const std::string& text);

}  // namespace psymet

#endif
