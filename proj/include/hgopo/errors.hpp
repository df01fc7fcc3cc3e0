#pragma once

#include <stdexcept>
#include <string>

namespace hgopo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent inputs to a library call (waist mismatch, bad coefficients, coarse dt, ...).
class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

/// Gauss-Hermite refinement did not settle below tolerance.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// The requested signal mode has no coupling to the pump (Γ <= 0).
class NoOscillation : public Error {
 public:
  using Error::Error;
};

/// Linearized below-threshold model evaluated at or above threshold.
class AboveThreshold : public Error {
 public:
  using Error::Error;
};

/// Measured quantities incompatible with the stated efficiencies.
class UnphysicalInput : public Error {
 public:
  using Error::Error;
};

/// Every basis order has zero overlap with the target mode.
class NoCoupling : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NumericalInstability : public Error {
 public:
  using Error::Error;
};

/// Config file problem; `field()` names the offending dotted key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgopo
