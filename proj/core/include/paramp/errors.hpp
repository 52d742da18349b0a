#pragma once

#include <stdexcept>
#include <string>

namespace paramp {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates the invariants of the type being constructed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical or domain failure: the inputs were well-formed but the
/// computation cannot produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix violates the uncertainty principle beyond tolerance.
class PhysicalityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Singular or non-positive state (e.g. nonpositive determinant).
class InvalidState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fidelity radicands went negative; the state pair is outside the
/// formula's domain.
class NumericalBreakdown : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// QFI is zero or negative, so no Cramér–Rao bound exists.
class NoInformation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation outside a function's domain (non-PD likelihood covariance,
/// flux near the Josephson divergence, ...).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Too many Monte-Carlo trials failed to converge.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace paramp
