#ifndef PSYMET_ERRORS_HPP
#define PSYMET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psymet {

// Bad command line, bad config file, missing paths.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data: unknown ids, bad labels, broken CSV rows.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure surfaced as an error (strict mode only).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psymet

#endif
