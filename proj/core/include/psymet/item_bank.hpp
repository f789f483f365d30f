#ifndef PSYMET_ITEM_BANK_HPP
#define PSYMET_ITEM_BANK_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace psymet {

enum class GoldLabel { entailment, contradiction, neutral };

// Parses a label string, case-insensitive after trimming whitespace.
std::optional<GoldLabel> parse_gold_label(const std::string& text);
const char* to_string(GoldLabel label);

struct Item {
  std::string item_id;
  std::string category;
  GoldLabel gold_label = GoldLabel::entailment;
  std::string premise;
  std::string hypothesis;
  bool is_attention_check = false;
};

// Immutable collection of items with unique ids. Item order is the order
// of construction and fixes the column order of every response matrix.
class ItemBank {
 public:
  ItemBank() = default;
  explicit ItemBank(std::vector<Item> items);

  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  const Item* find(const std::string& item_id) const;
  const Item& at(const std::string& item_id) const;
  bool contains(const std::string& item_id) const { return find(item_id) != nullptr; }

  bool has_category(const std::string& category) const;
  // Distinct category names in first-appearance order.
  std::vector<std::string> categories() const;

  // Ids in bank order; attention checks excluded unless requested.
  std::vector<std::string> item_ids(bool include_attention_checks = false) const;
  std::vector<std::string> item_ids_in_category(const std::string& category,
                                                bool include_attention_checks = false) const;

 private:
  std::vector<Item> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace psymet

#endif
