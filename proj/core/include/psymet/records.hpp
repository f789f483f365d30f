#ifndef PSYMET_RECORDS_HPP
#define PSYMET_RECORDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace psymet {

enum class PopulationKind { human, proxy, random, synthetic };

std::optional<PopulationKind> parse_population_kind(const std::string& text);
const char* to_string(PopulationKind kind);

struct PopulationTag {
  std::string name;
  PopulationKind kind = PopulationKind::proxy;

  friend bool operator==(const PopulationTag&, const PopulationTag&) = default;
};

// One respondent's unscored submission. A respondent may appear more than
// once (resubmissions) distinguished by submission_index; deduplication
// keeps the earliest.
struct RawRecord {
  std::string respondent_id;
  PopulationTag population;
  int submission_index = 0;
  std::vector<std::string> identity_keys;         // e.g. hashed IP, worker id
  std::map<std::string, std::string> answers;     // item_id -> chosen label text
  std::map<std::string, std::string> justifications;  // item_id -> free text
};

// Lowercases and trims; used wherever labels are compared.
std::string normalize_label(const std::string& text);

}  // namespace psymet

#endif
