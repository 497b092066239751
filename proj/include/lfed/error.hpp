#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfed {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient fields.
class FieldMismatch : public Error {
 public:
  FieldMismatch(int lhs, int rhs)
      : Error("field mismatch: Q(zeta_" + std::to_string(lhs) + ") vs Q(zeta_" +
              std::to_string(rhs) + ")") {}
};

/// A parameter violates the constraints of the object being built.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Polynomial text could not be parsed. Columns are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("syntax error at column " + std::to_string(column) + ": " + message),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace lfed
