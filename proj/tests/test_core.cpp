#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "psymet/errors.hpp"
#include "psymet/scoring.hpp"

using namespace psymet;

namespace {

RawRecord record(const std::string& who, const std::string& pop,
                 std::map<std::string, std::string> answers) {
  RawRecord r;
  r.respondent_id = who;
  r.population = {pop, PopulationKind::human};
  r.answers = std::move(answers);
  return r;
}

}  // namespace

TEST_CASE("item bank rejects duplicate ids and resolves categories") {
  CHECK_THROWS_AS(ItemBank({{"a", "x", GoldLabel::entailment, "", "", false},
                            {"a", "y", GoldLabel::neutral, "", "", false}}),
                  SchemaError);
  ItemBank bank({{"a", "x", GoldLabel::entailment, "", "", false},
                 {"b", "y", GoldLabel::neutral, "", "", false},
                 {"c", "x", GoldLabel::contradiction, "", "", true}});
  CHECK(bank.has_category("x"));
  CHECK_FALSE(bank.has_category("z"));
  CHECK(bank.categories() == std::vector<std::string>{"x", "y"});
  CHECK(bank.item_ids() == std::vector<std::string>{"a", "b"});
  CHECK(bank.item_ids(true) == std::vector<std::string>{"a", "b", "c"});
  CHECK(bank.at("c").is_attention_check);
}

TEST_CASE("gold labels parse case-insensitively after trimming") {
  CHECK(parse_gold_label("  Entailment ") == GoldLabel::entailment);
  CHECK(parse_gold_label("CONTRADICTION") == GoldLabel::contradiction);
  CHECK(parse_gold_label("neutral") == GoldLabel::neutral);
  CHECK_FALSE(parse_gold_label("maybe").has_value());
}

TEST_CASE("score_responses: all gold answers give a row of ones") {
  const ItemBank bank = fixtures::simple_bank(5);
  std::map<std::string, std::string> answers;
  for (const auto& id : bank.item_ids()) answers[id] = "entailment";
  const ResponseMatrix m = score_responses({record("r1", "h", answers)}, bank);
  REQUIRE(m.n_items() == 5);
  REQUIRE(m.n_respondents() == 1);
  for (std::size_t c = 0; c < 5; ++c) CHECK(m.cell(0, c) == 1);
}

TEST_CASE("score_responses: partial wrong answers leave missing tail") {
  const ItemBank bank = fixtures::simple_bank(5);
  const ResponseMatrix m = score_responses(
      {record("r1", "h",
              {{"i01", "neutral"}, {"i02", "neutral"}, {"i03", "contradiction"}})},
      bank);
  CHECK(m.cell(0, 0) == 0);
  CHECK(m.cell(0, 1) == 0);
  CHECK(m.cell(0, 2) == 0);
  CHECK(m.is_missing(0, 3));
  CHECK(m.is_missing(0, 4));
}

TEST_CASE("score_responses: 2x4 fixture equals the hand-scored grid") {
  // Bank gold labels: e, c, n, e. Hand-scored before implementation:
  //   r1 answers e, c, c, n -> 1, 1, 0, 0
  //   r2 answers c, c, n    -> 0, 1, 1, missing
  ItemBank bank({{"a", "g", GoldLabel::entailment, "", "", false},
                 {"b", "g", GoldLabel::contradiction, "", "", false},
                 {"c", "g", GoldLabel::neutral, "", "", false},
                 {"d", "g", GoldLabel::entailment, "", "", false}});
  const ResponseMatrix m = score_responses(
      {record("r1", "h",
              {{"a", "entailment"}, {"b", "contradiction"}, {"c", "contradiction"},
               {"d", "neutral"}}),
       record("r2", "h", {{"a", "contradiction"}, {"b", "contradiction"}, {"c", "neutral"}})},
      bank);
  const std::vector<Cell> expected{1, 1, 0, 0, 0, 1, 1, kMissingCell};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(m.cell(r, c) == expected[r * 4 + c]);
  }
}

TEST_CASE("score_responses: attention checks never enter the matrix") {
  ItemBank bank({{"a", "g", GoldLabel::entailment, "", "", false},
                 {"att", "g", GoldLabel::neutral, "", "", true}});
  const ResponseMatrix m =
      score_responses({record("r1", "h", {{"a", "entailment"}, {"att", "neutral"}})}, bank);
  CHECK(m.n_items() == 1);
  CHECK(m.item_ids() == std::vector<std::string>{"a"});

  auto [cells, attention] = score_record(record("r1", "h", {{"a", "entailment"}, {"att", "entailment"}}),
                                         bank);
  REQUIRE(attention.has_value());
  CHECK(*attention == 0.0);
}

TEST_CASE("score_responses rejections") {
  const ItemBank bank = fixtures::simple_bank(2);
  CHECK_THROWS_WITH_AS(score_responses({record("r1", "h", {{"zzz", "entailment"}})}, bank),
                       doctest::Contains("r1"), SchemaError);

  auto a = record("r1", "h", {{"i01", "entailment"}});
  auto b = record("r2", "other", {{"i01", "entailment"}});
  CHECK_THROWS_AS(score_responses({a, b}, bank), SchemaError);

  auto dup = record("r1", "h", {{"i02", "entailment"}});
  CHECK_THROWS_AS(score_responses({a, dup}, bank), SchemaError);
}

TEST_CASE("score_responses is order-independent up to row order") {
  const ItemBank bank = fixtures::simple_bank(3);
  auto a = record("ra", "h", {{"i01", "entailment"}, {"i03", "neutral"}});
  auto b = record("rb", "h", {{"i02", "contradiction"}});
  const ResponseMatrix m1 = score_responses({a, b}, bank);
  const ResponseMatrix m2 = score_responses({b, a}, bank);
  REQUIRE(m1.respondent_ids() == m2.respondent_ids());  // sorted by id
  for (std::size_t r = 0; r < m1.n_respondents(); ++r) {
    for (std::size_t c = 0; c < m1.n_items(); ++c) CHECK(m1.cell(r, c) == m2.cell(r, c));
  }
}

TEST_CASE("align_items restricts to the intersection") {
  const auto a = fixtures::matrix_from("101;010", "a", {"x", "y", "z"});
  const auto b = fixtures::matrix_from("11;00", "b", {"y", "w"});
  auto [ra, rb] = align_items(a, b);
  CHECK(ra.item_ids() == std::vector<std::string>{"y"});
  CHECK(rb.item_ids() == std::vector<std::string>{"y"});
  CHECK(ra.n_respondents() == 2);
  CHECK(rb.n_respondents() == 2);
  CHECK(ra.cell(0, 0) == 0);
  CHECK(rb.cell(0, 0) == 1);

  SUBCASE("identical item sets pass through") {
    auto [xa, xb] = align_items(a, a);
    CHECK(xa.item_ids() == a.item_ids());
    CHECK(xb.item_ids() == a.item_ids());
  }
  SUBCASE("disjoint item sets raise") {
    const auto c = fixtures::matrix_from("1;1", "c", {"q"});
    CHECK_THROWS_AS(align_items(a, c), SchemaError);
  }
  SUBCASE("selected set is symmetric in the arguments") {
    auto [ba, bb] = align_items(b, a);
    auto sorted = ba.item_ids();
    std::sort(sorted.begin(), sorted.end());
    auto sorted2 = ra.item_ids();
    std::sort(sorted2.begin(), sorted2.end());
    CHECK(sorted == sorted2);
  }
}

TEST_CASE("slice_by_category keeps the category and drops empty respondents") {
  ItemBank bank({{"a", "A", GoldLabel::entailment, "", "", false},
                 {"b", "A", GoldLabel::entailment, "", "", false},
                 {"c", "B", GoldLabel::entailment, "", "", false},
                 {"d", "B", GoldLabel::entailment, "", "", false},
                 {"e", "B", GoldLabel::entailment, "", "", false}});
  // r2 answered only B items.
  const auto m = fixtures::matrix_from("11111;..100;10011", "h", {"a", "b", "c", "d", "e"});

  const ResponseMatrix a = slice_by_category(m, "A", bank);
  CHECK(a.item_ids() == std::vector<std::string>{"a", "b"});
  CHECK(a.respondent_ids() == std::vector<std::string>{"r01", "r03"});

  const ResponseMatrix b = slice_by_category(m, "B", bank);
  CHECK(b.item_ids() == std::vector<std::string>{"c", "d", "e"});
  CHECK(b.n_respondents() == 3);

  CHECK_THROWS_AS(slice_by_category(m, "nope", bank), SchemaError);

  SUBCASE("single-category bank passes matrices through") {
    const ItemBank one = fixtures::simple_bank(3, "only");
    const auto mm = fixtures::matrix_from("111;000");
    const ResponseMatrix s = slice_by_category(mm, "only", one);
    CHECK(s.item_ids() == mm.item_ids());
    CHECK(s.n_respondents() == 2);
  }
}

TEST_CASE("slice then align equals align then slice on shared rows") {
  ItemBank bank({{"a", "A", GoldLabel::entailment, "", "", false},
                 {"b", "A", GoldLabel::entailment, "", "", false},
                 {"c", "B", GoldLabel::entailment, "", "", false}});
  const auto m1 = fixtures::matrix_from("111;010;1.0", "p1", {"a", "b", "c"});
  const auto m2 = fixtures::matrix_from("01;11", "p2", {"b", "c"});

  auto [a1, a2] = align_items(m1, m2);
  const ResponseMatrix route1 = slice_by_category(a1, "A", bank);
  const ResponseMatrix route2_pre = slice_by_category(m1, "A", bank);
  auto [route2, _] = align_items(route2_pre, slice_by_category(m2, "A", bank));

  CHECK(route1.item_ids() == route2.item_ids());
  // Rows that lose every response under the other operation order are
  // immaterial; compare the shared respondents cell by cell.
  for (std::size_t r1 = 0; r1 < route1.n_respondents(); ++r1) {
    const auto& rid = route1.respondent_ids()[r1];
    auto it = std::find(route2.respondent_ids().begin(), route2.respondent_ids().end(), rid);
    if (it == route2.respondent_ids().end()) continue;
    const std::size_t r2 = static_cast<std::size_t>(it - route2.respondent_ids().begin());
    for (std::size_t c = 0; c < route1.n_items(); ++c) {
      CHECK(route1.cell(r1, c) == route2.cell(r2, c));
    }
  }
}

TEST_CASE("response matrix rejects malformed storage") {
  const PopulationTag tag{"p", PopulationKind::proxy};
  CHECK_THROWS_AS(ResponseMatrix(tag, {"r1"}, {"a", "b"}, {1, 0, 1}), SchemaError);
  CHECK_THROWS_AS(ResponseMatrix(tag, {"r1"}, {"a", "b"}, {1, 7}), SchemaError);
  CHECK_NOTHROW(ResponseMatrix(tag, {"r1"}, {"a", "b"}, {1, kMissingCell}));
}
