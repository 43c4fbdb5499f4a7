#pragma once

#include <stdexcept>
#include <string>

namespace leadmine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or record; `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedLanguage : public Error {
 public:
  explicit UnsupportedLanguage(const std::string& code)
      : Error("unsupported language '" + code + "' (expected 'it' or 'en')") {}
};

}  // namespace leadmine
