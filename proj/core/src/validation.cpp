#include "psymet/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "psymet/errors.hpp"
#include "psymet/scoring.hpp"

namespace psymet {

namespace {
constexpr std::size_t kCopiedTextMinChars = 15;
}

void ValidationConfig::check() const {
  if (!(0.0 <= reject_below && reject_below <= accept_above && accept_above <= 1.0)) {
    throw ConfigError("validation: need 0 <= reject_below <= accept_above <= 1");
  }
  if (!(0.0 <= attention_pass_min && attention_pass_min <= 1.0)) {
    throw ConfigError("validation: attention_pass_min outside [0, 1]");
  }
  if (min_justification_chars < 0 || duplicate_justification_max < 1) {
    throw ConfigError("validation: nonsensical justification thresholds");
  }
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::accepted: return "accepted";
    case Decision::rejected: return "rejected";
    case Decision::needs_review: return "needs_review";
  }
  return "accepted";
}

const char* to_string(JustificationFlag flag) {
  switch (flag) {
    case JustificationFlag::copied_question_text: return "copied_question_text";
    case JustificationFlag::repeated_justification: return "repeated_justification";
    case JustificationFlag::too_short: return "too_short";
    case JustificationFlag::empty: return "empty";
  }
  return "empty";
}

std::pair<std::vector<RawRecord>, std::vector<ValidationVerdict>> dedupe(
    const std::vector<RawRecord>& records) {
  // Earliest submission per identity key wins, regardless of input order.
  std::map<std::string, int> first_submission;
  for (const RawRecord& r : records) {
    for (const std::string& key : r.identity_keys) {
      auto it = first_submission.find(key);
      if (it == first_submission.end() || r.submission_index < it->second) {
        first_submission[key] = r.submission_index;
      }
    }
  }

  std::vector<RawRecord> kept;
  std::vector<ValidationVerdict> verdicts;
  for (const RawRecord& r : records) {
    ValidationVerdict v;
    v.respondent_id = r.respondent_id;
    v.submission_index = r.submission_index;
    v.population = r.population.name;
    for (const std::string& key : r.identity_keys) {
      if (first_submission.at(key) < r.submission_index) {
        const std::string rule = "duplicate_identity:" + key;
        v.triggered_rules.push_back(rule);
        v.evidence[rule] = "identity key '" + key + "' first seen at submission " +
                           std::to_string(first_submission.at(key));
      }
    }
    if (v.triggered_rules.empty()) {
      kept.push_back(r);
    } else {
      v.decision = Decision::rejected;
      verdicts.push_back(std::move(v));
    }
  }
  return {std::move(kept), std::move(verdicts)};
}

ValidationVerdict score_gate(const RawRecord& record, const std::vector<Cell>& scored_row,
                             std::optional<double> attention_fraction,
                             const ValidationConfig& cfg) {
  cfg.check();
  if (attention_fraction && !(*attention_fraction >= 0.0 && *attention_fraction <= 1.0)) {
    throw std::invalid_argument("score_gate: attention fraction outside [0, 1]");
  }
  int answered = 0, correct = 0;
  for (Cell c : scored_row) {
    if (c == kMissingCell) continue;
    ++answered;
    correct += c;
  }
  if (answered == 0) {
    throw SchemaError("score_gate: record '" + record.respondent_id +
                      "' has no scored responses");
  }
  const double score = static_cast<double>(correct) / answered;

  ValidationVerdict v;
  v.respondent_id = record.respondent_id;
  v.submission_index = record.submission_index;
  v.population = record.population.name;

  char buf[160];
  std::snprintf(buf, sizeof(buf), "overall score %.4f (%d/%d)", score, correct, answered);
  v.evidence["info"] = buf;

  if (score < cfg.reject_below) {
    v.decision = Decision::rejected;
    v.triggered_rules.push_back("score_below_minimum");
    std::snprintf(buf, sizeof(buf), "score %.4f < %.4f", score, cfg.reject_below);
    v.evidence["score_below_minimum"] = buf;
    return v;
  }
  if (score > cfg.accept_above) {
    v.decision = Decision::accepted;
    return v;
  }
  // Middle band, boundaries included.
  if (attention_fraction && *attention_fraction < cfg.attention_pass_min) {
    v.decision = Decision::rejected;
    v.triggered_rules.push_back("attention_below_minimum");
    std::snprintf(buf, sizeof(buf), "attention %.4f < %.4f with mid-band score %.4f",
                  *attention_fraction, cfg.attention_pass_min, score);
    v.evidence["attention_below_minimum"] = buf;
    return v;
  }
  v.decision = Decision::needs_review;
  return v;
}

std::string normalize_justification(const std::string& text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      pending_space = true;
    }
    // punctuation dropped
  }
  return out;
}

std::vector<JustificationFlag> justification_flags(const RawRecord& record,
                                                   const ItemBank& bank,
                                                   const ValidationConfig& cfg) {
  cfg.check();
  std::set<JustificationFlag> flags;
  std::map<std::string, int> uses;

  for (const auto& [item_id, answer] : record.answers) {
    const Item* item = bank.find(item_id);
    if (item && item->is_attention_check) continue;

    auto jit = record.justifications.find(item_id);
    const std::string text = jit == record.justifications.end() ? "" : jit->second;
    const std::string norm = normalize_justification(text);
    if (norm.empty()) {
      flags.insert(JustificationFlag::empty);
      continue;
    }
    if (static_cast<int>(text.size()) < cfg.min_justification_chars) {
      flags.insert(JustificationFlag::too_short);
    }
    ++uses[norm];
    if (item && text.size() >= kCopiedTextMinChars &&
        (item->premise.find(text) != std::string::npos ||
         item->hypothesis.find(text) != std::string::npos)) {
      flags.insert(JustificationFlag::copied_question_text);
    }
  }
  for (const auto& [norm, count] : uses) {
    if (count > cfg.duplicate_justification_max) {
      flags.insert(JustificationFlag::repeated_justification);
      break;
    }
  }
  return {flags.begin(), flags.end()};
}

ProtocolResult run_protocol(const std::vector<RawRecord>& records, const ItemBank& bank,
                            const ValidationConfig& cfg) {
  cfg.check();
  auto [survivors, audit] = dedupe(records);

  ProtocolResult out;
  out.audit = std::move(audit);
  for (const RawRecord& r : survivors) {
    auto [row, attention] = score_record(r, bank);
    if (std::none_of(row.begin(), row.end(), [](Cell c) { return c != kMissingCell; })) {
      // Nothing scorable (e.g. only attention checks answered).
      ValidationVerdict v;
      v.respondent_id = r.respondent_id;
      v.submission_index = r.submission_index;
      v.population = r.population.name;
      v.decision = Decision::rejected;
      v.triggered_rules.push_back("no_scorable_responses");
      v.evidence["no_scorable_responses"] = "record answered no scorable item";
      out.audit.push_back(std::move(v));
      continue;
    }
    ValidationVerdict v = score_gate(r, row, attention, cfg);
    if (v.decision == Decision::needs_review) {
      const auto flags = justification_flags(r, bank, cfg);
      if (cfg.auto_resolve_review) {
        if (flags.empty()) {
          v.decision = Decision::accepted;
          v.evidence["info"] += "; justifications pass";
        } else {
          v.decision = Decision::rejected;
          for (JustificationFlag f : flags) {
            const std::string rule = std::string("justification:") + to_string(f);
            v.triggered_rules.push_back(rule);
            v.evidence[rule] = "mid-band score with flagged justifications";
          }
        }
      } else {
        for (JustificationFlag f : flags) {
          v.evidence[std::string("justification:") + to_string(f)] = "flag (manual review)";
        }
      }
    }
    if (v.decision == Decision::accepted) out.accepted.push_back(r);
    out.audit.push_back(std::move(v));
  }

  std::sort(out.audit.begin(), out.audit.end(),
            [](const ValidationVerdict& a, const ValidationVerdict& b) {
              return std::tie(a.respondent_id, a.submission_index) <
                     std::tie(b.respondent_id, b.submission_index);
            });
  std::sort(out.accepted.begin(), out.accepted.end(),
            [](const RawRecord& a, const RawRecord& b) {
              return a.respondent_id < b.respondent_id;
            });
  return out;
}

}  // namespace psymet
