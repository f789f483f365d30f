#ifndef PSYMET_CTT_HPP
#define PSYMET_CTT_HPP

#include <optional>
#include <string>
#include <vector>

#include "psymet/response_matrix.hpp"

namespace psymet {

enum class DifficultyKind { proportion_correct, rasch_b };

const char* to_string(DifficultyKind kind);

// Per-item scalar property for one population. proportion_correct values lie
// in [0,1]; rasch_b values are unbounded reals.
struct DifficultyVector {
  PopulationTag population;
  std::vector<std::string> item_ids;
  std::vector<double> values;
  DifficultyKind kind = DifficultyKind::proportion_correct;
};

// Symmetric pairwise correlation matrix with pairwise non-missing counts.
// Zero-variance pairs are carried as undefined entries, not as zeros.
class CorrelationMatrix {
 public:
  CorrelationMatrix(std::vector<std::string> item_ids, std::vector<double> values,
                    std::vector<int> pair_counts, std::vector<bool> defined);

  const std::vector<std::string>& item_ids() const { return item_ids_; }
  std::size_t size() const { return item_ids_.size(); }

  double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  int pair_count(std::size_t i, std::size_t j) const { return counts_[i * size() + j]; }
  bool is_defined(std::size_t i, std::size_t j) const { return defined_[i * size() + j]; }
  bool all_defined() const;

 private:
  std::vector<std::string> item_ids_;
  std::vector<double> values_;
  std::vector<int> counts_;
  std::vector<bool> defined_;
};

// Per-item proportion correct over non-missing responses. Throws SchemaError
// when an item has no responses at all, naming the item.
DifficultyVector proportion_correct(const ResponseMatrix& m);

// Pearson correlation (phi) between item columns, pairwise deletion. Pairs
// with fewer than two shared respondents or zero variance come back
// undefined.
CorrelationMatrix inter_item_correlation(const ResponseMatrix& m);

struct ItemTotalCorrelation {
  std::vector<std::string> item_ids;
  // Corrected: item against the mean of the other items (rest score).
  std::vector<std::optional<double>> corrected;
  // Uncorrected: item against the mean over all items including itself.
  std::vector<std::optional<double>> uncorrected;
};

// Requires >= 2 items and >= 3 respondents. Rest scores use the mean of the
// respondent's non-missing other items so uneven missingness does not skew
// totals; on complete data this is the classical rest total up to scale.
ItemTotalCorrelation item_total_correlation(const ResponseMatrix& m);

// Internal-consistency coefficient on the complete-row submatrix (listwise
// deletion). Empty when the total-score variance is zero or fewer than two
// complete rows remain.
std::optional<double> cronbach_alpha(const ResponseMatrix& m);

}  // namespace psymet

#endif
