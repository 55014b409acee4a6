#pragma once

#include <stdexcept>
#include <string>

namespace optic {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (topology, RIB or scenario files). Carries the
// 1-based line number of the offending line.
struct ParseError : Error {
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_name(source),
        line_number(line) {}
  std::string source_name;
  int line_number;
};

// Structurally invalid data (missing vantage, non-positive weight, ...).
struct StructuralError : Error {
  using Error::Error;
};

// A referenced entity (node, route, prefix) does not exist.
struct NotFoundError : Error {
  using Error::Error;
};

// An entity that must be unique already exists.
struct ConflictError : Error {
  using Error::Error;
};

// Invalid parameter combination for the analytical model.
struct ParameterError : Error {
  using Error::Error;
};

}  // namespace optic
