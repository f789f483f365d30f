#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "psymet/ctt.hpp"
#include "psymet/simulate.hpp"
#include "psymet/stats.hpp"

using namespace psymet;
using doctest::Approx;

namespace {

std::vector<std::string> item_ids(int k) {
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) ids.push_back("s" + std::to_string(i));
  return ids;
}

bool identical_cells(const ResponseMatrix& a, const ResponseMatrix& b) {
  if (a.n_respondents() != b.n_respondents() || a.n_items() != b.n_items()) return false;
  for (std::size_t r = 0; r < a.n_respondents(); ++r) {
    for (std::size_t c = 0; c < a.n_items(); ++c) {
      if (a.cell(r, c) != b.cell(r, c)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rasch generation saturates for extreme ability") {
  GenerativeSpec spec;
  spec.n_respondents = 20;
  spec.true_b = {-1, 0, 1};
  spec.theta_mean = 50.0;
  spec.seed = 1;
  const auto m = generate_rasch_population(spec, item_ids(3), {"p", PopulationKind::synthetic});
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    for (std::size_t c = 0; c < m.n_items(); ++c) CHECK(m.cell(r, c) == 1);
  }
}

TEST_CASE("generation is deterministic per seed") {
  GenerativeSpec spec;
  spec.n_respondents = 40;
  spec.true_b = {-1, 0, 1, 2};
  spec.seed = 988;
  const auto ids = item_ids(4);
  const PopulationTag tag{"p", PopulationKind::synthetic};
  CHECK(identical_cells(generate_rasch_population(spec, ids, tag),
                        generate_rasch_population(spec, ids, tag)));

  const auto g1 = generate_random_guessers(30, ids, 3, 55, tag);
  const auto g2 = generate_random_guessers(30, ids, 3, 55, tag);
  CHECK(identical_cells(g1, g2));

  GenerativeSpec other = spec;
  other.seed = 989;
  CHECK_FALSE(identical_cells(generate_rasch_population(spec, ids, tag),
                              generate_rasch_population(other, ids, tag)));
}

TEST_CASE("difficulty ordering follows the generating curve") {
  GenerativeSpec spec;
  spec.n_respondents = 2000;
  spec.true_b = {-1, 0, 1};
  spec.seed = 7;
  const auto m = generate_rasch_population(spec, item_ids(3), {"p", PopulationKind::synthetic});
  const auto d = proportion_correct(m);
  CHECK(d.values[0] > d.values[1]);
  CHECK(d.values[1] > d.values[2]);
}

TEST_CASE("guessers with one choice are always right") {
  const auto m = generate_random_guessers(5, item_ids(4), 1, 3, {"g", PopulationKind::random});
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    for (std::size_t c = 0; c < m.n_items(); ++c) CHECK(m.cell(r, c) == 1);
  }
}

TEST_CASE("guesser hit rate concentrates at 1/n_choices") {
  const auto m =
      generate_random_guessers(3000, item_ids(5), 3, 1001, {"g", PopulationKind::random});
  const auto d = proportion_correct(m);
  for (double v : d.values) CHECK_WITHIN(v, 1.0 / 3.0, 0.03);
}

TEST_CASE("guesser difficulty does not track a reference ranking") {
  // With many respondents the guesser difficulty vector is flat noise, so its
  // rank correlation against any fixed vector stays small.
  const auto m =
      generate_random_guessers(4000, item_ids(12), 3, 77, {"g", PopulationKind::random});
  const auto d = proportion_correct(m);
  std::vector<double> reference(12);
  for (int i = 0; i < 12; ++i) reference[i] = i;
  const CorrResult r = spearman(reference, d.values);
  CHECK(std::fabs(r.r) < 0.45);
}
