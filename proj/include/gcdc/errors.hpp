#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcdc {

// A model assigned probability zero to an event that actually occurred.
// Derives from domain_error: the probability argument was outside the open
// interval for the outcome at hand.
class InfiniteCodelength : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Truncated, corrupt or inconsistent encoded stream.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntactically malformed input file. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input whose content violates a constraint (index out of range, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gcdc
