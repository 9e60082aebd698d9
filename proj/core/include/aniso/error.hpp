#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aniso {

/// Raised when a geometric precondition fails: degenerate or indefinite
/// quadratic forms, flat triangles, bad edge indices.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a refinement run exceeds its node budget.
class RunawayRefinement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aniso
