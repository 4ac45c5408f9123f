#pragma once

#include <stdexcept>
#include <string>

namespace glancelab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad or inconsistent user configuration (CLI exit status 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Any numerical failure (CLI exit status 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Root refinement did not converge; carries the starting value.
class RefinementError : public NumericalError {
 public:
  RefinementError(const std::string& what, double seed)
      : NumericalError(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
  double seed() const noexcept { return seed_; }

 private:
  double seed_;
};

/// A scale window that contains no admissible eigenmode.
class NoModeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Log-log fit refused (too few rows, non-positive data, poor fit).
class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An oracle check failed (CLI exit status 3).
class OracleFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace glancelab
