#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnbc {

// Input text could not be parsed; line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

  // Same error, message prefixed with the file it came from.
  ParseError in_file(const std::string& path) const { return ParseError(line_, path + ": " + what(), Preformatted{}); }

 private:
  struct Preformatted {};
  ParseError(std::size_t line, const std::string& what, Preformatted) : std::runtime_error(what), line_(line) {}

  std::size_t line_;
};

// A size guard (vertex budget, enumeration budget) would be exceeded.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An operation was called outside its documented precondition, e.g. a
// counting-identity check on a coloring that is not balanced.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A transfer or construction hypothesis does not hold for the given input.
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cnbc
