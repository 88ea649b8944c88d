#pragma once

#include <stdexcept>
#include <string>

namespace dsc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside its admissible domain (Δ ≤ 0, q > 4, p > n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but not implemented for this kernel family or
/// boundary kind.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An evaluation point lies outside the sampled hull.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The boundary-extension coefficients cannot be formed.
class DegenerateBoundaryError : public Error {
 public:
  using Error::Error;
};

/// Shape or size mismatch between a field and an operator.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Eigen- or linear-solver failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Masked geometry is empty or disconnected.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Time integration blew up.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace dsc
