#ifndef PSYMET_AGREEMENT_HPP
#define PSYMET_AGREEMENT_HPP

#include <string>
#include <vector>

#include "psymet/clustering.hpp"
#include "psymet/ctt.hpp"
#include "psymet/stats.hpp"

namespace psymet {

enum class CoefficientKind { pearson, spearman };

const char* to_string(CoefficientKind kind);

// One proxy population's agreement with the reference on one item property.
struct AgreementRow {
  PopulationTag population;
  CoefficientKind coefficient = CoefficientKind::pearson;
  double r = 0.0;
  double p = 1.0;
  int n = 0;
  std::string stars;
  bool defined = true;
  bool best = false;  // highest |r| among defined rows
  std::string note;
};

// One category, one property: the reference population against each proxy.
struct AgreementReport {
  std::string category;
  PopulationTag reference;
  std::string property;  // proportion_correct | comembership | rasch_b
  std::vector<AgreementRow> rows;
};

// Difficulty vectors must share the reference's item ordering exactly;
// proportion-correct difficulties default to Spearman, Rasch b to Pearson.
AgreementReport compare_populations(const DifficultyVector& reference,
                                    const std::vector<DifficultyVector>& proxies,
                                    const std::string& category);
AgreementReport compare_populations(const DifficultyVector& reference,
                                    const std::vector<DifficultyVector>& proxies,
                                    const std::string& category, CoefficientKind kind);

// Co-membership vectors must share the reference's pair list exactly;
// compared with Pearson.
AgreementReport compare_populations(const CoMembership& reference,
                                    const std::vector<CoMembership>& proxies,
                                    const std::string& category);

}  // namespace psymet

#endif
