// Shared builders for test data.
#ifndef PSYMET_TESTS_FIXTURES_HPP
#define PSYMET_TESTS_FIXTURES_HPP

#include <cmath>
#include <string>
#include <vector>

// Absolute-tolerance comparison (doctest's Approx is relative-only).
#define CHECK_WITHIN(a, b, tol)                                                  \
  do {                                                                           \
    const double check_within_a = (a), check_within_b = (b);                     \
    CAPTURE(check_within_a);                                                     \
    CAPTURE(check_within_b);                                                     \
    CHECK(std::fabs(check_within_a - check_within_b) <= (tol));                  \
  } while (0)

#include "psymet/item_bank.hpp"
#include "psymet/records.hpp"
#include "psymet/response_matrix.hpp"

namespace fixtures {

// Rows separated by ';', cells '1', '0' or '.' (missing). Item ids default
// to i01, i02, ...; respondent ids r01, r02, ...
psymet::ResponseMatrix matrix_from(const std::string& pattern,
                                   const std::string& population = "pop",
                                   std::vector<std::string> item_ids = {});

// k items named i01.. with gold label entailment, single category.
psymet::ItemBank simple_bank(int k, const std::string& category = "general");

// The six-record protocol fixture: a 20-item + 3-attention-check bank and
// records engineered to hit every branch of the authentication pipeline.
struct ProtocolFixture {
  psymet::ItemBank bank;
  std::vector<psymet::RawRecord> records;
  // expected: respondent_id, submission_index, decision, sorted rule ids
  struct Expected {
    std::string respondent_id;
    int submission_index;
    std::string decision;
    std::vector<std::string> rules;
  };
  std::vector<Expected> expected;  // ordered by (respondent_id, submission_index)
};

ProtocolFixture protocol_fixture();

}  // namespace fixtures

#endif
