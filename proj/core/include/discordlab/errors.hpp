#pragma once

#include <stdexcept>
#include <string>

namespace discordlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density matrix or parameter set violates a state invariant
/// (hermiticity, trace, positivity, parameter ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter is outside its admissible range (channel strength,
/// rates, grid sizes).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The correlation matrix is singular; the quadric construction is not
/// available and the degenerate classification must be used instead.
class SingularCorrelationError : public Error {
 public:
  using Error::Error;
};

/// The spatial block of a quadric is not definite.
class NotAnEllipsoidError : public Error {
 public:
  using Error::Error;
};

/// An analytic method was requested for a state without X structure.
class UnsupportedStructureError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes that must agree did not (conjecture or
/// method cross-check).
class ConjectureViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace discordlab
