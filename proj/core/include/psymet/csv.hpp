#ifndef PSYMET_CSV_HPP
#define PSYMET_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace psymet {

// Minimal RFC 4180 table: quoted fields, embedded commas/quotes/newlines,
// CRLF tolerated. Rows keep their 1-based source line for error messages.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  // Index of a header column, -1 when absent.
  int column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in, const std::string& source_name);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace psymet

#endif
