#ifndef PSYMET_RESPONSE_MATRIX_HPP
#define PSYMET_RESPONSE_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psymet/records.hpp"

namespace psymet {

// Cell values of a scored matrix: 1 correct, 0 incorrect, kMissingCell unanswered.
using Cell = std::int8_t;
inline constexpr Cell kMissingCell = -1;

// Respondents x items score matrix for one population. Immutable after
// construction; row-major storage.
class ResponseMatrix {
 public:
  ResponseMatrix(PopulationTag population,
                 std::vector<std::string> respondent_ids,
                 std::vector<std::string> item_ids,
                 std::vector<Cell> cells);

  const PopulationTag& population() const { return population_; }
  const std::vector<std::string>& respondent_ids() const { return respondent_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }

  std::size_t n_respondents() const { return respondent_ids_.size(); }
  std::size_t n_items() const { return item_ids_.size(); }

  Cell cell(std::size_t row, std::size_t col) const {
    return cells_[row * item_ids_.size() + col];
  }
  bool is_missing(std::size_t row, std::size_t col) const {
    return cell(row, col) == kMissingCell;
  }

  std::optional<std::size_t> item_index(const std::string& item_id) const;

  std::vector<Cell> row(std::size_t r) const;
  std::vector<Cell> column(std::size_t c) const;

  // Non-missing count and correct count for one column.
  std::pair<int, int> column_counts(std::size_t c) const;

 private:
  PopulationTag population_;
  std::vector<std::string> respondent_ids_;
  std::vector<std::string> item_ids_;
  std::vector<Cell> cells_;
};

}  // namespace psymet

#endif
