#pragma once

#include <stdexcept>
#include <string>

namespace jk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different variable registries.
class RegistryMismatch : public Error {
 public:
  using Error::Error;
};

/// Input text or document could not be parsed. Position is 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column), message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return message_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// A domain precondition failed (Jacobi violation, excluded parameter value, singular matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jk
