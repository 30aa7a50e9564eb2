#pragma once

#include <stdexcept>
#include <string>

namespace toristab {

// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (bad JSON, bad rational literal, wrong field shape).
// line/column are 1-based when known, 0 when the position is not meaningful.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& what, int line_ = 0, int column_ = 0)
      : Error(what), line(line_), column(column_) {}
};

// Structurally well-formed input that violates a geometric precondition
// (unbounded, empty interior, redundant facet, non-integral, L <= max f, ...).
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Command line misuse: unknown flag, missing argument, unparsable flag value.
struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(what) {}
};

}  // namespace toristab
