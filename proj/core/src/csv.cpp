#include "psymet/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "psymet/errors.hpp"

namespace psymet {

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(std::istream& in, const std::string& source_name) {
  CsvTable table;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t line = 1, row_line = 1;

  auto end_field = [&]() {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&]() {
    end_field();
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size()) {
        throw SchemaError(source_name + ":" + std::to_string(row_line) + ": expected " +
                          std::to_string(table.header.size()) + " fields, got " +
                          std::to_string(fields.size()));
      }
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(row_line);
    }
    fields.clear();
    row_started = false;
  };

  char c;
  while (in.get(c)) {
    if (!row_started && c != '\n' && c != '\r') {
      row_started = true;
      row_line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw SchemaError(source_name + ":" + std::to_string(line) +
                            ": quote inside unquoted field");
        }
        in_quotes = true;
        break;
      case ',':
        if (!row_started) {  // row of empty leading field
          row_started = true;
          row_line = line;
        }
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        if (row_started) end_row();
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) {
    throw SchemaError(source_name + ": unterminated quoted field");
  }
  if (row_started) end_row();
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in, path);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace psymet
