#pragma once

#include <stdexcept>
#include <string>

namespace ice {

/// Base of every error thrown by the library.
class IceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live in different variable spaces (different rank n).
class VarSpaceMismatch : public IceError {
 public:
  VarSpaceMismatch(std::size_t lhs, std::size_t rhs)
      : IceError("variable space mismatch: rank " + std::to_string(lhs) +
                 " vs rank " + std::to_string(rhs)) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public IceError {
 public:
  using IceError::IceError;
};

/// An enumeration or matrix size guard was exceeded.
class GuardExceeded : public IceError {
 public:
  using IceError::IceError;
};

}  // namespace ice
