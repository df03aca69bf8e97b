#pragma once

#include <stdexcept>
#include <string>

namespace knalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain of the operation (q <= 0, q == 1, lambda == 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A coefficient was requested outside the known window of a truncated series.
class OutOfWindowError : public Error {
 public:
  OutOfWindowError(int exponent, int minExp, int truncOrder);

  int exponent() const noexcept { return exponent_; }
  int minExp() const noexcept { return minExp_; }
  int truncOrder() const noexcept { return truncOrder_; }

 private:
  int exponent_;
  int minExp_;
  int truncOrder_;
};

/// A sampled function value was not finite; the sampling circle passes through a singularity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The declared leading order of a local expansion does not match the function.
class WrongLeadingOrderError : public Error {
 public:
  using Error::Error;
};

/// A vanishing q-bracket denominator (e.g. alpha + beta = 0 in the central coefficients).
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

/// A basis family could not be built or failed validation (exponent law, duality).
class BasisError : public Error {
 public:
  using Error::Error;
};

/// The requested basis index is not stored in the family.
class MissingIndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed basis or config file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid command-line or config-file usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace knalg
