#include "fixtures.hpp"

#include <cstdio>
#include <stdexcept>

namespace fixtures {

using namespace psymet;

namespace {

std::string padded(const char* prefix, int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%02d", prefix, n);
  return buf;
}

}  // namespace

ResponseMatrix matrix_from(const std::string& pattern, const std::string& population,
                           std::vector<std::string> item_ids) {
  std::vector<std::vector<Cell>> rows(1);
  for (char c : pattern) {
    switch (c) {
      case ';': rows.emplace_back(); break;
      case '1': rows.back().push_back(1); break;
      case '0': rows.back().push_back(0); break;
      case '.': rows.back().push_back(kMissingCell); break;
      case ' ': break;
      default: throw std::invalid_argument("matrix_from: bad char");
    }
  }
  const std::size_t k = rows.front().size();
  if (item_ids.empty()) {
    for (std::size_t i = 0; i < k; ++i) item_ids.push_back(padded("i", static_cast<int>(i) + 1));
  }
  std::vector<std::string> respondents;
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != k) throw std::invalid_argument("matrix_from: ragged rows");
    respondents.push_back(padded("r", static_cast<int>(r) + 1));
    cells.insert(cells.end(), rows[r].begin(), rows[r].end());
  }
  return ResponseMatrix({population, PopulationKind::proxy}, std::move(respondents),
                        std::move(item_ids), std::move(cells));
}

ItemBank simple_bank(int k, const std::string& category) {
  std::vector<Item> items;
  for (int i = 1; i <= k; ++i) {
    items.push_back({padded("i", i), category, GoldLabel::entailment, "", "", false});
  }
  return ItemBank(std::move(items));
}

ProtocolFixture protocol_fixture() {
  ProtocolFixture f;

  std::vector<Item> items;
  for (int i = 1; i <= 20; ++i) {
    Item item;
    item.item_id = padded("q", i);
    item.category = "gate";
    item.gold_label = GoldLabel::entailment;
    item.premise = "the premise text of question number " + std::to_string(i);
    item.hypothesis = "the hypothesis text of question number " + std::to_string(i);
    items.push_back(std::move(item));
  }
  for (int i = 1; i <= 3; ++i) {
    Item item;
    item.item_id = padded("att", i);
    item.category = "gate";
    item.gold_label = GoldLabel::neutral;
    item.is_attention_check = true;
    items.push_back(std::move(item));
  }
  f.bank = ItemBank(std::move(items));

  const PopulationTag pop{"crowd", PopulationKind::human};
  auto make = [&](const std::string& who, int submission, const std::string& key,
                  int n_correct, int n_attention_correct) {
    RawRecord r;
    r.respondent_id = who;
    r.population = pop;
    r.submission_index = submission;
    r.identity_keys = {key};
    for (int i = 1; i <= 20; ++i) {
      r.answers[padded("q", i)] = i <= n_correct ? "entailment" : "contradiction";
      r.justifications[padded("q", i)] =
          who + " explains choice " + std::to_string(i) + " in their own words";
    }
    for (int i = 1; i <= 3; ++i) {
      r.answers[padded("att", i)] = i <= n_attention_correct ? "neutral" : "entailment";
    }
    return r;
  };

  // alice: 20/20, clean -> accepted on score
  f.records.push_back(make("alice", 1, "wid:alice", 20, 3));
  // bob: 13/20 = 0.65 -> accepted (strictly above 0.60)
  f.records.push_back(make("bob", 2, "wid:bob", 13, 3));
  // carol: 7/20 = 0.35 -> rejected (strictly below 0.40)
  f.records.push_back(make("carol", 3, "wid:carol", 7, 3));
  // dave: 10/20 = 0.50 with attention 2/3 -> rejected at the attention gate
  f.records.push_back(make("dave", 4, "wid:dave", 10, 2));
  // erin: 10/20 = 0.50 with attention 3/3, but justifications are junk:
  // one pasted from a hypothesis, the rest a repeated "good"
  RawRecord erin = make("erin", 5, "wid:erin", 10, 3);
  for (int i = 1; i <= 20; ++i) erin.justifications[padded("q", i)] = "good";
  erin.justifications[padded("q", 1)] = "the hypothesis text of question number 1";
  f.records.push_back(erin);
  // bob again at submission 6: duplicate worker id
  f.records.push_back(make("bob", 6, "wid:bob", 18, 3));

  f.expected = {
      {"alice", 1, "accepted", {}},
      {"bob", 2, "accepted", {}},
      {"bob", 6, "rejected", {"duplicate_identity:wid:bob"}},
      {"carol", 3, "rejected", {"score_below_minimum"}},
      {"dave", 4, "rejected", {"attention_below_minimum"}},
      {"erin",
       5,
       "rejected",
       {"justification:copied_question_text", "justification:repeated_justification",
        "justification:too_short"}},
  };
  return f;
}

}  // namespace fixtures
