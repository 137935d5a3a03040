#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace streamveil {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments, schema violations, bad configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input; when raised from a file parser it carries the 1-based
/// line number of the offending row (line() == 0 means "no line context").
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message), line_(0) {}
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Filesystem failures; message names the path involved.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace streamveil
