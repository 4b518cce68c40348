#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyntopk {

/// Malformed edge-list input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A graph mutation was requested whose precondition does not hold
/// (inserting an existing edge, deleting an absent one, self-loops).
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Bound state and graph are out of step with each other.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace dyntopk
