#include <doctest.h>

#include <cmath>

#include "psymet/agreement.hpp"
#include "psymet/errors.hpp"

using namespace psymet;
using doctest::Approx;

namespace {

DifficultyVector difficulty(const std::string& pop, std::vector<double> values,
                            DifficultyKind kind = DifficultyKind::proportion_correct) {
  DifficultyVector d;
  d.population = {pop, PopulationKind::proxy};
  for (std::size_t i = 0; i < values.size(); ++i) d.item_ids.push_back("i" + std::to_string(i));
  d.values = std::move(values);
  d.kind = kind;
  return d;
}

}  // namespace

TEST_CASE("identical proxy gets r = 1 and the best flag") {
  const auto ref = difficulty("h", {0.9, 0.7, 0.5, 0.3, 0.1});
  const auto rep = compare_populations(ref, {difficulty("t", {0.9, 0.7, 0.5, 0.3, 0.1}),
                                             difficulty("l", {0.5, 0.9, 0.1, 0.7, 0.3})},
                                       "cat");
  CHECK(rep.property == "proportion_correct");
  CHECK(rep.rows[0].coefficient == CoefficientKind::spearman);  // rank-based for proportions
  CHECK(rep.rows[0].r == Approx(1.0));
  CHECK(rep.rows[0].best);
  CHECK_FALSE(rep.rows[1].best);
}

TEST_CASE("reversed proxy is flagged on |r|") {
  const auto ref = difficulty("h", {0.9, 0.7, 0.5, 0.3, 0.1});
  const auto rep = compare_populations(ref, {difficulty("a", {0.8, 0.75, 0.5, 0.55, 0.35}),
                                             difficulty("b", {0.1, 0.3, 0.5, 0.7, 0.9}),
                                             difficulty("c", {0.5, 0.4, 0.9, 0.2, 0.6})},
                                       "cat");
  CHECK(rep.rows[1].r == Approx(-1.0));
  CHECK(rep.rows[1].best);
  CHECK_FALSE(rep.rows[0].best);
}

TEST_CASE("rasch difficulties default to Pearson") {
  const auto ref = difficulty("h", {-1.0, 0.0, 1.0, 2.0}, DifficultyKind::rasch_b);
  const auto rep =
      compare_populations(ref, {difficulty("t", {-0.9, 0.2, 0.8, 2.2}, DifficultyKind::rasch_b)},
                          "cat");
  CHECK(rep.property == "rasch_b");
  CHECK(rep.rows[0].coefficient == CoefficientKind::pearson);
  CHECK(rep.rows[0].r > 0.97);
}

TEST_CASE("misaligned items are refused") {
  const auto ref = difficulty("h", {0.9, 0.7, 0.5});
  auto proxy = difficulty("t", {0.9, 0.7, 0.5});
  proxy.item_ids[1] = "other";
  CHECK_THROWS_AS(compare_populations(ref, {proxy}, "cat"), SchemaError);
}

TEST_CASE("undefined rows are kept as n/a so the report shape is stable") {
  const auto ref = difficulty("h", {0.9, 0.7, 0.5, 0.3});
  const auto rep = compare_populations(ref, {difficulty("flat", {0.5, 0.5, 0.5, 0.5}),
                                             difficulty("ok", {0.8, 0.6, 0.55, 0.2})},
                                       "cat");
  REQUIRE(rep.rows.size() == 2);
  CHECK_FALSE(rep.rows[0].defined);
  CHECK(std::isnan(rep.rows[0].r));
  CHECK(rep.rows[0].stars.empty());
  CHECK(rep.rows[1].defined);
  CHECK(rep.rows[1].best);
}

TEST_CASE("comembership agreement uses Pearson on the pair vectors") {
  CoMembership ref;
  ref.population = {"h", PopulationKind::human};
  ref.pairs = {{"a", "b"}, {"a", "c"}, {"b", "c"}};
  ref.same = {1, 0, 0};
  CoMembership same = ref, inverted = ref;
  same.population = {"t", PopulationKind::proxy};
  inverted.population = {"r", PopulationKind::random};
  inverted.same = {0, 1, 1};
  const auto rep = compare_populations(ref, {same, inverted}, "cat");
  CHECK(rep.property == "comembership");
  CHECK(rep.rows[0].r == Approx(1.0));
  CHECK(rep.rows[1].r == Approx(-1.0));

  CoMembership shuffled = ref;
  shuffled.pairs = {{"a", "b"}, {"b", "c"}, {"a", "c"}};
  CHECK_THROWS_AS(compare_populations(ref, {shuffled}, "cat"), SchemaError);
}
