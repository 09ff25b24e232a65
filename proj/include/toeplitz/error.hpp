#pragma once

#include <stdexcept>
#include <string>

namespace toeplitz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A coefficient or index was requested that the source cannot provide.
class RangeError : public Error {
public:
  using Error::Error;
};

/// A truncated series was evaluated below its stored horizon.
class TruncationError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Circulant (or embedded) spectrum too close to zero.
class SingularError : public Error {
public:
  SingularError(const std::string& what, double min_abs_eig)
      : Error(what + " (min |eig| = " + std::to_string(min_abs_eig) + ")"),
        min_abs_eig_(min_abs_eig) {}

  double min_abs_eig() const noexcept { return min_abs_eig_; }

private:
  double min_abs_eig_;
};

/// Cholesky failure, non-positive symbol sample or CG curvature breakdown.
class NotPositiveDefiniteError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

class FitError : public Error {
public:
  using Error::Error;
};

}  // namespace toeplitz
