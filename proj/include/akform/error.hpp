#pragma once

#include <stdexcept>
#include <string>

namespace akform {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed literal or model text. Line and column are 1-based; 0 means unknown.
struct ParseError : Error {
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Well-formed input that violates a model or operator constraint.
struct SemanticError : Error {
  using Error::Error;
};

}  // namespace akform
