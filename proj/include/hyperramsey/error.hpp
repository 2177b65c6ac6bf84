#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperramsey {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (size, width, range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a mathematical requirement, e.g. a
/// certificate whose class is not sum-free or a tower rule applied at the
/// wrong uniformity.
class InvalidData : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow the expected grammar.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A request that would need vertex labels beyond the configured width cap.
class WidthCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperramsey
