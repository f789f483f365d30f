#include "psymet/response_matrix.hpp"

#include "psymet/errors.hpp"

namespace psymet {

ResponseMatrix::ResponseMatrix(PopulationTag population,
                               std::vector<std::string> respondent_ids,
                               std::vector<std::string> item_ids,
                               std::vector<Cell> cells)
    : population_(std::move(population)),
      respondent_ids_(std::move(respondent_ids)),
      item_ids_(std::move(item_ids)),
      cells_(std::move(cells)) {
  if (cells_.size() != respondent_ids_.size() * item_ids_.size()) {
    throw SchemaError("response matrix: cell count does not match dimensions");
  }
  for (Cell c : cells_) {
    if (c != 0 && c != 1 && c != kMissingCell) {
      throw SchemaError("response matrix: cell values must be 0, 1 or missing");
    }
  }
}

std::optional<std::size_t> ResponseMatrix::item_index(const std::string& item_id) const {
  for (std::size_t i = 0; i < item_ids_.size(); ++i) {
    if (item_ids_[i] == item_id) return i;
  }
  return std::nullopt;
}

std::vector<Cell> ResponseMatrix::row(std::size_t r) const {
  return {cells_.begin() + static_cast<std::ptrdiff_t>(r * n_items()),
          cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * n_items())};
}

std::vector<Cell> ResponseMatrix::column(std::size_t c) const {
  std::vector<Cell> out(n_respondents());
  for (std::size_t r = 0; r < n_respondents(); ++r) out[r] = cell(r, c);
  return out;
}

std::pair<int, int> ResponseMatrix::column_counts(std::size_t c) const {
  int answered = 0, correct = 0;
  for (std::size_t r = 0; r < n_respondents(); ++r) {
    Cell v = cell(r, c);
    if (v == kMissingCell) continue;
    ++answered;
    correct += v;
  }
  return {answered, correct};
}

}  // namespace psymet
