#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bihamil {

// Malformed expression or manifest; `position` is a 0-based character offset when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position),
        detail_(std::move(message)) {}
  explicit ParseError(std::string message)
      : std::runtime_error(message), position_(npos), detail_(std::move(message)) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

// A denominator vanished where a value was requested.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed; indicates a bug or an unsupported input.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bihamil
