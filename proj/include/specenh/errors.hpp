#pragma once

#include <stdexcept>
#include <string>

namespace specenh {

/// Base class of all failures raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside its mathematical domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Inconsistent configuration: mismatched kernel/condition pairs, malformed
/// files, unknown names.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// The requested kernel has no closed real-space form; callers should use the
/// sampled (Fourier) path instead.
class UnsupportedFormError : public Error {
public:
  using Error::Error;
};

/// A computation failed numerically.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Unregularized inversion hit a zero Fourier multiplier.
class SingularInversionError : public NumericError {
public:
  using NumericError::NumericError;
};

/// A width or peak measurement is undefined on the given data.
class MeasurementError : public NumericError {
public:
  using NumericError::NumericError;
};

/// No admissible regularization parameter reproduces the requested residual.
class DataIncompatibleError : public NumericError {
public:
  using NumericError::NumericError;
};

/// An error-bound evaluation was requested outside its validity region.
class BoundInvalidError : public NumericError {
public:
  using NumericError::NumericError;
};

/// A value exceeded the representable range; the message carries its log.
class OverflowError : public NumericError {
public:
  using NumericError::NumericError;
};

/// The fitting design matrix lost rank; carries the indices of the closest
/// pair of line locations.
class RankDeficiencyError : public NumericError {
public:
  RankDeficiencyError(const std::string& what, int first, int second)
      : NumericError(what), first(first), second(second) {}
  int first;
  int second;
};

} // namespace specenh
