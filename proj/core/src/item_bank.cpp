#include "psymet/item_bank.hpp"

#include <algorithm>
#include <cctype>

#include "psymet/errors.hpp"
#include "psymet/records.hpp"

namespace psymet {

std::optional<GoldLabel> parse_gold_label(const std::string& text) {
  const std::string norm = normalize_label(text);
  if (norm == "entailment") return GoldLabel::entailment;
  if (norm == "contradiction") return GoldLabel::contradiction;
  if (norm == "neutral") return GoldLabel::neutral;
  return std::nullopt;
}

const char* to_string(GoldLabel label) {
  switch (label) {
    case GoldLabel::entailment: return "entailment";
    case GoldLabel::contradiction: return "contradiction";
    case GoldLabel::neutral: return "neutral";
  }
  return "entailment";
}

ItemBank::ItemBank(std::vector<Item> items) : items_(std::move(items)) {
  index_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].item_id.empty()) {
      throw SchemaError("item bank: empty item_id at position " + std::to_string(i));
    }
    auto [_, inserted] = index_.emplace(items_[i].item_id, i);
    if (!inserted) {
      throw SchemaError("item bank: duplicate item_id '" + items_[i].item_id + "'");
    }
  }
}

const Item* ItemBank::find(const std::string& item_id) const {
  auto it = index_.find(item_id);
  return it == index_.end() ? nullptr : &items_[it->second];
}

const Item& ItemBank::at(const std::string& item_id) const {
  const Item* item = find(item_id);
  if (!item) throw SchemaError("item bank: unknown item_id '" + item_id + "'");
  return *item;
}

bool ItemBank::has_category(const std::string& category) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Item& it) { return it.category == category; });
}

std::vector<std::string> ItemBank::categories() const {
  std::vector<std::string> out;
  for (const Item& it : items_) {
    if (std::find(out.begin(), out.end(), it.category) == out.end()) {
      out.push_back(it.category);
    }
  }
  return out;
}

std::vector<std::string> ItemBank::item_ids(bool include_attention_checks) const {
  std::vector<std::string> out;
  for (const Item& it : items_) {
    if (it.is_attention_check && !include_attention_checks) continue;
    out.push_back(it.item_id);
  }
  return out;
}

std::vector<std::string> ItemBank::item_ids_in_category(const std::string& category,
                                                        bool include_attention_checks) const {
  std::vector<std::string> out;
  for (const Item& it : items_) {
    if (it.category != category) continue;
    if (it.is_attention_check && !include_attention_checks) continue;
    out.push_back(it.item_id);
  }
  return out;
}

}  // namespace psymet
