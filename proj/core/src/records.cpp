#include "psymet/records.hpp"

#include <algorithm>
#include <cctype>

namespace psymet {

std::optional<PopulationKind> parse_population_kind(const std::string& text) {
  std::string norm = normalize_label(text);
  if (norm == "human") return PopulationKind::human;
  if (norm == "proxy") return PopulationKind::proxy;
  if (norm == "random") return PopulationKind::random;
  if (norm == "synthetic") return PopulationKind::synthetic;
  return std::nullopt;
}

const char* to_string(PopulationKind kind) {
  switch (kind) {
    case PopulationKind::human: return "human";
    case PopulationKind::proxy: return "proxy";
    case PopulationKind::random: return "random";
    case PopulationKind::synthetic: return "synthetic";
  }
  return "proxy";
}

std::string normalize_label(const std::string& text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string out = text.substr(begin, end - begin);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace psymet
