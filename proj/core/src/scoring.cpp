#include "psymet/scoring.hpp"

#include <algorithm>
#include <set>

#include "psymet/errors.hpp"

namespace psymet {

namespace {

Cell score_answer(const std::string& answer, GoldLabel gold, const RawRecord& record,
                  const std::string& item_id) {
  auto parsed = parse_gold_label(answer);
  if (!parsed) {
    throw SchemaError("record '" + record.respondent_id + "': unparseable label '" + answer +
                      "' for item '" + item_id + "'");
  }
  return *parsed == gold ? Cell{1} : Cell{0};
}

}  // namespace

std::pair<std::vector<Cell>, std::optional<double>> score_record(const RawRecord& record,
                                                                 const ItemBank& bank) {
  const std::vector<std::string> ids = bank.item_ids(false);
  std::vector<Cell> cells(ids.size(), kMissingCell);
  int attention_answered = 0, attention_correct = 0;

  for (const auto& [item_id, answer] : record.answers) {
    const Item* item = bank.find(item_id);
    if (!item) {
      throw SchemaError("record '" + record.respondent_id + "' answers unknown item '" +
                        item_id + "'");
    }
    const Cell score = score_answer(answer, item->gold_label, record, item_id);
    if (item->is_attention_check) {
      ++attention_answered;
      attention_correct += score;
    } else {
      auto pos = std::find(ids.begin(), ids.end(), item_id);
      cells[static_cast<std::size_t>(pos - ids.begin())] = score;
    }
  }

  std::optional<double> attention_fraction;
  if (attention_answered > 0) {
    attention_fraction = static_cast<double>(attention_correct) / attention_answered;
  }
  return {std::move(cells), attention_fraction};
}

ResponseMatrix score_responses(const std::vector<RawRecord>& records, const ItemBank& bank) {
  PopulationTag population;
  if (!records.empty()) population = records.front().population;

  std::vector<const RawRecord*> ordered;
  ordered.reserve(records.size());
  for (const RawRecord& r : records) {
    if (!(r.population == population)) {
      throw SchemaError("score_responses: mixed populations '" + population.name + "' and '" +
                        r.population.name + "'");
    }
    ordered.push_back(&r);
  }
  std::sort(ordered.begin(), ordered.end(), [](const RawRecord* a, const RawRecord* b) {
    return a->respondent_id < b->respondent_id;
  });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->respondent_id == ordered[i - 1]->respondent_id) {
      throw SchemaError("score_responses: duplicate respondent_id '" +
                        ordered[i]->respondent_id + "' (run the validation protocol first)");
    }
  }

  std::vector<std::string> item_ids = bank.item_ids(false);
  std::vector<std::string> respondent_ids;
  respondent_ids.reserve(ordered.size());
  std::vector<Cell> cells;
  cells.reserve(ordered.size() * item_ids.size());
  for (const RawRecord* r : ordered) {
    respondent_ids.push_back(r->respondent_id);
    auto [row, attention] = score_record(*r, bank);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return ResponseMatrix(population, std::move(respondent_ids), std::move(item_ids),
                        std::move(cells));
}

std::pair<ResponseMatrix, ResponseMatrix> align_items(const ResponseMatrix& a,
                                                      const ResponseMatrix& b) {
  std::set<std::string> in_b(b.item_ids().begin(), b.item_ids().end());
  std::vector<std::string> common;
  for (const std::string& id : a.item_ids()) {
    if (in_b.count(id)) common.push_back(id);
  }
  if (common.empty()) {
    throw SchemaError("align_items: '" + a.population().name + "' and '" +
                      b.population().name + "' share no items");
  }

  auto restrict = [&](const ResponseMatrix& m) {
    std::vector<std::size_t> cols;
    cols.reserve(common.size());
    for (const std::string& id : common) cols.push_back(*m.item_index(id));
    std::vector<Cell> cells;
    cells.reserve(m.n_respondents() * cols.size());
    for (std::size_t r = 0; r < m.n_respondents(); ++r) {
      for (std::size_t c : cols) cells.push_back(m.cell(r, c));
    }
    return ResponseMatrix(m.population(), m.respondent_ids(), common, std::move(cells));
  };
  return {restrict(a), restrict(b)};
}

ResponseMatrix slice_by_category(const ResponseMatrix& m, const std::string& category,
                                 const ItemBank& bank) {
  if (!bank.has_category(category)) {
    throw SchemaError("slice_by_category: unknown category '" + category + "'");
  }
  std::vector<std::string> wanted = bank.item_ids_in_category(category, false);
  std::vector<std::size_t> cols;
  std::vector<std::string> kept_ids;
  for (const std::string& id : wanted) {
    if (auto idx = m.item_index(id)) {
      cols.push_back(*idx);
      kept_ids.push_back(id);
    }
  }

  std::vector<std::string> kept_respondents;
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    bool any = false;
    for (std::size_t c : cols) {
      if (m.cell(r, c) != kMissingCell) {
        any = true;
        break;
      }
    }
    if (!any) continue;
    kept_respondents.push_back(m.respondent_ids()[r]);
    for (std::size_t c : cols) cells.push_back(m.cell(r, c));
  }
  return ResponseMatrix(m.population(), std::move(kept_respondents), std::move(kept_ids),
                        std::move(cells));
}

std::pair<ResponseMatrix, std::vector<std::string>> drop_unanswered_items(
    const ResponseMatrix& m) {
  std::vector<std::size_t> keep;
  std::vector<std::string> kept_ids, dropped;
  for (std::size_t c = 0; c < m.n_items(); ++c) {
    if (m.column_counts(c).first > 0) {
      keep.push_back(c);
      kept_ids.push_back(m.item_ids()[c]);
    } else {
      dropped.push_back(m.item_ids()[c]);
    }
  }
  if (dropped.empty()) return {m, {}};
  std::vector<Cell> cells;
  cells.reserve(m.n_respondents() * keep.size());
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    for (std::size_t c : keep) cells.push_back(m.cell(r, c));
  }
  return {ResponseMatrix(m.population(), m.respondent_ids(), std::move(kept_ids),
                         std::move(cells)),
          std::move(dropped)};
}

}  // namespace psymet
