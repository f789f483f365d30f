#include "psymet/ctt.hpp"

#include <cmath>
#include <limits>

#include "psymet/errors.hpp"

namespace psymet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(DifficultyKind kind) {
  return kind == DifficultyKind::proportion_correct ? "proportion_correct" : "rasch_b";
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> item_ids,
                                     std::vector<double> values, std::vector<int> pair_counts,
                                     std::vector<bool> defined)
    : item_ids_(std::move(item_ids)),
      values_(std::move(values)),
      counts_(std::move(pair_counts)),
      defined_(std::move(defined)) {
  const std::size_t n = item_ids_.size();
  if (values_.size() != n * n || counts_.size() != n * n || defined_.size() != n * n) {
    throw SchemaError("correlation matrix: storage does not match dimension");
  }
}

bool CorrelationMatrix::all_defined() const {
  for (bool d : defined_) {
    if (!d) return false;
  }
  return true;
}

DifficultyVector proportion_correct(const ResponseMatrix& m) {
  DifficultyVector out;
  out.population = m.population();
  out.item_ids = m.item_ids();
  out.kind = DifficultyKind::proportion_correct;
  out.values.reserve(m.n_items());
  for (std::size_t c = 0; c < m.n_items(); ++c) {
    auto [answered, correct] = m.column_counts(c);
    if (answered == 0) {
      throw SchemaError("proportion_correct: item '" + m.item_ids()[c] + "' has no responses");
    }
    out.values.push_back(static_cast<double>(correct) / answered);
  }
  return out;
}

CorrelationMatrix inter_item_correlation(const ResponseMatrix& m) {
  const std::size_t k = m.n_items();
  std::vector<double> values(k * k, kNaN);
  std::vector<int> counts(k * k, 0);
  std::vector<bool> defined(k * k, false);

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      // Pairwise deletion: respondents with both cells present.
      int n = 0;
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (std::size_t r = 0; r < m.n_respondents(); ++r) {
        const Cell a = m.cell(r, i), b = m.cell(r, j);
        if (a == kMissingCell || b == kMissingCell) continue;
        ++n;
        sx += a;
        sy += b;
        sxx += static_cast<double>(a) * a;
        syy += static_cast<double>(b) * b;
        sxy += static_cast<double>(a) * b;
      }
      counts[i * k + j] = counts[j * k + i] = n;
      if (n < 2) continue;
      const double vx = sxx - sx * sx / n;
      const double vy = syy - sy * sy / n;
      if (vx <= 0.0 || vy <= 0.0) continue;
      double r = (sxy - sx * sy / n) / std::sqrt(vx * vy);
      if (r > 1.0) r = 1.0;
      if (r < -1.0) r = -1.0;
      values[i * k + j] = values[j * k + i] = r;
      defined[i * k + j] = defined[j * k + i] = true;
    }
  }
  return CorrelationMatrix(m.item_ids(), std::move(values), std::move(counts),
                           std::move(defined));
}

namespace {

std::optional<double> pearson_pairwise(const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       const std::vector<bool>& present) {
  int n = 0;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (!present[r]) continue;
    ++n;
    sx += x[r];
    sy += y[r];
    sxx += x[r] * x[r];
    syy += y[r] * y[r];
    sxy += x[r] * y[r];
  }
  if (n < 2) return std::nullopt;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
  return (sxy - sx * sy / n) / std::sqrt(vx * vy);
}

}  // namespace

ItemTotalCorrelation item_total_correlation(const ResponseMatrix& m) {
  if (m.n_items() < 2) throw SchemaError("item_total_correlation: needs at least 2 items");
  if (m.n_respondents() < 3) {
    throw SchemaError("item_total_correlation: needs at least 3 respondents");
  }
  const std::size_t k = m.n_items();
  const std::size_t n = m.n_respondents();

  ItemTotalCorrelation out;
  out.item_ids = m.item_ids();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> item(n, 0.0), rest(n, 0.0), total(n, 0.0);
    std::vector<bool> rest_ok(n, false), total_ok(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (m.is_missing(r, i)) continue;
      item[r] = m.cell(r, i);
      int n_rest = 0, s_rest = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i || m.is_missing(r, j)) continue;
        ++n_rest;
        s_rest += m.cell(r, j);
      }
      if (n_rest > 0) {
        rest[r] = static_cast<double>(s_rest) / n_rest;
        rest_ok[r] = true;
        total[r] = static_cast<double>(s_rest + m.cell(r, i)) / (n_rest + 1);
        total_ok[r] = true;
      }
    }
    out.corrected.push_back(pearson_pairwise(item, rest, rest_ok));
    out.uncorrected.push_back(pearson_pairwise(item, total, total_ok));
  }
  return out;
}

std::optional<double> cronbach_alpha(const ResponseMatrix& m) {
  const std::size_t k = m.n_items();
  if (k < 2) throw SchemaError("cronbach_alpha: needs at least 2 items");

  // Listwise deletion: the variance decomposition needs complete rows.
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    bool complete = true;
    for (std::size_t c = 0; c < k; ++c) {
      if (m.is_missing(r, c)) {
        complete = false;
        break;
      }
    }
    if (complete) rows.push_back(r);
  }
  const std::size_t n = rows.size();
  if (n < 2) return std::nullopt;

  double sum_item_var = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    double s = 0, ss = 0;
    for (std::size_t r : rows) {
      const double v = m.cell(r, c);
      s += v;
      ss += v * v;
    }
    sum_item_var += (ss - s * s / n) / (n - 1);
  }
  double st = 0, sst = 0;
  for (std::size_t r : rows) {
    double t = 0;
    for (std::size_t c = 0; c < k; ++c) t += m.cell(r, c);
    st += t;
    sst += t * t;
  }
  const double total_var = (sst - st * st / n) / (n - 1);
  if (total_var <= 0.0) return std::nullopt;
  return (static_cast<double>(k) / (k - 1)) * (1.0 - sum_item_var / total_var);
}

}  // namespace psymet
