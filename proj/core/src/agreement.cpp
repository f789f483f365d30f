#include "psymet/agreement.hpp"

#include <cmath>

#include "psymet/errors.hpp"

namespace psymet {

const char* to_string(CoefficientKind kind) {
  return kind == CoefficientKind::pearson ? "pearson" : "spearman";
}

namespace {

AgreementRow make_row(const PopulationTag& population, CoefficientKind kind,
                      std::span<const double> x, std::span<const double> y) {
  const CorrResult res =
      kind == CoefficientKind::pearson ? pearson(x, y) : spearman(x, y);
  AgreementRow row;
  row.population = population;
  row.coefficient = kind;
  row.r = res.r;
  row.p = res.p;
  row.n = res.n;
  row.defined = res.defined;
  row.note = res.note;
  row.stars = res.defined ? significance_stars(res.p) : "";
  return row;
}

void flag_best(std::vector<AgreementRow>& rows) {
  double best = -1.0;
  for (const AgreementRow& r : rows) {
    if (r.defined) best = std::max(best, std::fabs(r.r));
  }
  if (best < 0.0) return;
  for (AgreementRow& r : rows) {
    if (r.defined && std::fabs(r.r) == best) {
      r.best = true;
      return;  // single flag; earlier row wins exact ties
    }
  }
}

}  // namespace

AgreementReport compare_populations(const DifficultyVector& reference,
                                    const std::vector<DifficultyVector>& proxies,
                                    const std::string& category) {
  const CoefficientKind kind = reference.kind == DifficultyKind::proportion_correct
                                   ? CoefficientKind::spearman
                                   : CoefficientKind::pearson;
  return compare_populations(reference, proxies, category, kind);
}

AgreementReport compare_populations(const DifficultyVector& reference,
                                    const std::vector<DifficultyVector>& proxies,
                                    const std::string& category, CoefficientKind kind) {
  AgreementReport report;
  report.category = category;
  report.reference = reference.population;
  report.property = to_string(reference.kind);
  for (const DifficultyVector& proxy : proxies) {
    if (proxy.item_ids != reference.item_ids) {
      throw SchemaError("compare_populations: item ordering of '" + proxy.population.name +
                        "' does not match reference '" + reference.population.name + "'");
    }
    if (proxy.kind != reference.kind) {
      throw SchemaError("compare_populations: mixed difficulty kinds");
    }
    report.rows.push_back(make_row(proxy.population, kind, reference.values, proxy.values));
  }
  flag_best(report.rows);
  return report;
}

AgreementReport compare_populations(const CoMembership& reference,
                                    const std::vector<CoMembership>& proxies,
                                    const std::string& category) {
  AgreementReport report;
  report.category = category;
  report.reference = reference.population;
  report.property = "comembership";

  std::vector<double> ref(reference.same.begin(), reference.same.end());
  for (const CoMembership& proxy : proxies) {
    if (proxy.pairs != reference.pairs) {
      throw SchemaError("compare_populations: item-pair list of '" + proxy.population.name +
                        "' does not match reference '" + reference.population.name + "'");
    }
    std::vector<double> vals(proxy.same.begin(), proxy.same.end());
    report.rows.push_back(
        make_row(proxy.population, CoefficientKind::pearson, ref, vals));
  }
  flag_best(report.rows);
  return report;
}

}  // namespace psymet
