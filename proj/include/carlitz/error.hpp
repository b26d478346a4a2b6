#pragma once

#include <stdexcept>
#include <string>

namespace carlitz {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: mismatched fields, malformed input, caps exceeded.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Division by zero or inversion of a non-unit.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A truncated object does not carry enough terms, or a root-extraction
/// budget ran out.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the domain of the operation (pole at a prime,
/// prime dividing the modulus, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The coefficient field lacks a capability the operation needs
/// (e.g. q-th roots in a non-perfect field).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always signals a bug or a
/// counterexample to a proven identity.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace carlitz
