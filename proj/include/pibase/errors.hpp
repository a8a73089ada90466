#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pibase {

/// A documented precondition of an operation was violated by its arguments.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A term uses a cardinal atom above the configured maximum level.
class LevelOverflow : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Brute-force search refused because the input exceeds its size cap.
class SizeCapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace pibase
