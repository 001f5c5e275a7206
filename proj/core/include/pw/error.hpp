#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pw {

/// Base class of every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exploration or materialization exceeded its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Syntax or reference error in a workbench document.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Caps for eager materialization and configuration-graph exploration.
struct Limits {
  std::size_t max_states = 1'000'000;
  std::size_t max_transitions = 5'000'000;
};

}  // namespace pw
