#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "psymet/ctt.hpp"
#include "psymet/errors.hpp"
#include "psymet/rng.hpp"

using namespace psymet;
using doctest::Approx;
using fixtures::matrix_from;

TEST_CASE("proportion_correct counts non-missing cells only") {
  SUBCASE("all correct") {
    const auto m = matrix_from("1;1;1;1");
    CHECK(proportion_correct(m).values[0] == Approx(1.0));
  }
  SUBCASE("missing cells are excluded") {
    const auto m = matrix_from("1;0;.;0");
    CHECK(proportion_correct(m).values[0] == Approx(1.0 / 3));
  }
  SUBCASE("4x3 fixture against the hand count") {
    // rows (1,1,1), (1,0,.), (0,1,0), (1,1,1):
    // col1 3/4, col2 3/4, col3 2/3 (one missing).
    const auto d = proportion_correct(matrix_from("111;10.;010;111"));
    CHECK(d.values[0] == Approx(3.0 / 4));
    CHECK(d.values[1] == Approx(3.0 / 4));
    CHECK(d.values[2] == Approx(2.0 / 3));
    CHECK(d.kind == DifficultyKind::proportion_correct);
  }
  SUBCASE("item with zero responses raises, naming the item") {
    const auto m = matrix_from("1.;0.");
    CHECK_THROWS_WITH_AS(proportion_correct(m), doctest::Contains("i02"), SchemaError);
  }
  SUBCASE("row order does not matter") {
    const auto a = proportion_correct(matrix_from("10;01;11"));
    const auto b = proportion_correct(matrix_from("11;01;10"));
    CHECK(a.values == b.values);
  }
}

TEST_CASE("inter_item_correlation basics") {
  SUBCASE("identical columns correlate 1") {
    const auto c = inter_item_correlation(matrix_from("11;00;11;00"));
    CHECK(c.at(0, 1) == Approx(1.0));
  }
  SUBCASE("complementary columns correlate -1") {
    const auto c = inter_item_correlation(matrix_from("10;01;10;01"));
    CHECK(c.at(0, 1) == Approx(-1.0));
  }
  SUBCASE("orthogonal columns correlate 0 (phi oracle)") {
    const auto c = inter_item_correlation(matrix_from("11;10;01;00"));
    CHECK(c.at(0, 1) == Approx(0.0));
  }
  SUBCASE("zero-variance columns are undefined, not zero") {
    const auto c = inter_item_correlation(matrix_from("11;10;11"));
    CHECK_FALSE(c.is_defined(0, 1));
    CHECK_FALSE(c.is_defined(0, 0));  // zero-variance diagonal too
    CHECK(c.is_defined(1, 1));
    CHECK(c.at(1, 1) == Approx(1.0));
  }
  SUBCASE("pair counts track pairwise deletion") {
    const auto c = inter_item_correlation(matrix_from("11;1.;01;00"));
    CHECK(c.pair_count(0, 1) == 3);
    CHECK(c.pair_count(0, 0) == 4);
  }
}

TEST_CASE("inter_item_correlation equals brute-force Pearson on complete matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    // 10x8 random complete matrices.
    std::vector<Cell> cells(80);
    std::vector<std::string> items, resp;
    for (int i = 0; i < 8; ++i) items.push_back("i" + std::to_string(i));
    for (int r = 0; r < 10; ++r) resp.push_back("r" + std::to_string(r));
    for (Cell& c : cells) c = rng.bernoulli(0.5) ? 1 : 0;
    const ResponseMatrix m({"x", PopulationKind::proxy}, resp, items, cells);
    const auto c = inter_item_correlation(m);

    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        std::vector<double> a, b;
        for (int r = 0; r < 10; ++r) {
          a.push_back(m.cell(r, i));
          b.push_back(m.cell(r, j));
        }
        const double brute = oracles::brute_pearson(a, b);
        if (std::isnan(brute)) {
          CHECK_FALSE(c.is_defined(i, j));
        } else if (c.is_defined(i, j)) {
          CHECK(c.at(i, j) == Approx(brute).epsilon(1e-12));
          CHECK(c.at(j, i) == c.at(i, j));  // exact symmetry
          CHECK(std::fabs(c.at(i, j)) <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("relabeling 0<->1 flips difficulty and preserves correlations") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Cell> cells(48);
    for (Cell& c : cells) c = rng.bernoulli(0.4) ? 1 : 0;
    std::vector<std::string> items{"a", "b", "c", "d"}, resp;
    for (int r = 0; r < 12; ++r) resp.push_back("r" + std::to_string(r));
    const ResponseMatrix m({"x", PopulationKind::proxy}, resp, items, cells);
    std::vector<Cell> flipped(cells);
    for (Cell& c : flipped) c = c == kMissingCell ? c : Cell(1 - c);
    const ResponseMatrix fm({"x", PopulationKind::proxy}, resp, items, flipped);

    const auto d = proportion_correct(m), fd = proportion_correct(fm);
    for (std::size_t i = 0; i < 4; ++i) CHECK(fd.values[i] == Approx(1.0 - d.values[i]));

    const auto c = inter_item_correlation(m), fc = inter_item_correlation(fm);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        REQUIRE(c.is_defined(i, j) == fc.is_defined(i, j));
        if (c.is_defined(i, j)) CHECK(fc.at(i, j) == Approx(c.at(i, j)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("item-total correlation") {
  SUBCASE("two identical columns give 1 for both") {
    const auto it = item_total_correlation(matrix_from("11;00;11;00"));
    CHECK(*it.corrected[0] == Approx(1.0));
    CHECK(*it.corrected[1] == Approx(1.0));
  }
  SUBCASE("item complementary to the single other item gives -1") {
    const auto it = item_total_correlation(matrix_from("10;01;10;01"));
    CHECK(*it.corrected[0] == Approx(-1.0));
    CHECK(*it.corrected[1] == Approx(-1.0));
  }
  SUBCASE("constructed independence fixture gives exactly 0") {
    // Columns b, c produce rest means (0, .5, 1, 0, .5, 1) for column a;
    // a = (1,0,0,0,0,1) has zero covariance with that rest score.
    const auto m = matrix_from("100;001;011;000;010;111", "pop", {"a", "b", "c"});
    const auto it = item_total_correlation(m);
    CHECK(*it.corrected[0] == Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("zero-variance rest score is undefined") {
    // Columns a, b are complementary, so item c's rest mean is constant 0.5.
    const auto it = item_total_correlation(matrix_from("101;010;100;011", "pop", {"a", "b", "c"}));
    CHECK_FALSE(it.corrected[2].has_value());
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(item_total_correlation(matrix_from("1;0;1")), SchemaError);
    CHECK_THROWS_AS(item_total_correlation(matrix_from("11;00")), SchemaError);
  }
}

TEST_CASE("cronbach alpha") {
  SUBCASE("identical columns give exactly 1") {
    CHECK(*cronbach_alpha(matrix_from("111;000;111;000")) == Approx(1.0));
  }
  SUBCASE("5x4 fixture matches the hand-evaluated formula") {
    // Item variances .2, .3, .2, .3 (n-1 denominator), total variance 2.5:
    // alpha = (4/3) * (1 - 1.0/2.5) = 0.8
    const auto m = matrix_from("1101;1000;1111;0000;1100");
    CHECK(*cronbach_alpha(m) == Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("independent random columns land near zero, matching direct formula") {
    Rng rng(2718);
    std::vector<Cell> cells(400 * 2);
    for (Cell& c : cells) c = rng.bernoulli(0.5) ? 1 : 0;
    std::vector<std::string> resp;
    for (int r = 0; r < 400; ++r) resp.push_back("r" + std::to_string(r));
    const ResponseMatrix m({"x", PopulationKind::proxy}, resp, {"a", "b"}, cells);
    const double alpha = *cronbach_alpha(m);
    CHECK(std::fabs(alpha) < 0.3);

    // Independent evaluation of the same formula.
    double m0 = 0, m1 = 0;
    for (int r = 0; r < 400; ++r) {
      m0 += m.cell(r, 0);
      m1 += m.cell(r, 1);
    }
    m0 /= 400;
    m1 /= 400;
    double v0 = 0, v1 = 0, vt = 0;
    for (int r = 0; r < 400; ++r) {
      v0 += (m.cell(r, 0) - m0) * (m.cell(r, 0) - m0);
      v1 += (m.cell(r, 1) - m1) * (m.cell(r, 1) - m1);
      const double t = m.cell(r, 0) + m.cell(r, 1) - m0 - m1;
      vt += t * t;
    }
    v0 /= 399;
    v1 /= 399;
    vt /= 399;
    CHECK(alpha == Approx(2.0 * (1.0 - (v0 + v1) / vt)).epsilon(1e-12));
  }
  SUBCASE("listwise deletion and degenerate cases") {
    CHECK(cronbach_alpha(matrix_from("11;1.;00")).has_value());   // row 2 dropped
    CHECK_FALSE(cronbach_alpha(matrix_from("10;01;10;01")).has_value());  // zero total variance
  }
}
