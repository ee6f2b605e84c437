#pragma once

#include <stdexcept>
#include <string>

namespace fnlab {

enum class ErrorKind { Input = 2, Precondition = 3, Internal = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed or out-of-range input data.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// Operation requested outside the supported fragment (e.g. oplus with power bounds).
class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// An operand fails a class or compatibility precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

/// An internal consistency check failed.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

}  // namespace fnlab
