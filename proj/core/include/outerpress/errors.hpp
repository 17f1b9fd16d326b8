#pragma once

#include <stdexcept>
#include <string>

namespace outerpress {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value outside the domain of a constitutive law or functional (v <= 0, theta <= 0, C0 < 1, ...).
class DomainError : public Error {
 public:
  DomainError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Evaluation outside the range a tabulated object covers.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Invalid pressure schedule (non-positive p, missing limit value, ...).
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Initial data that violates v0 > 0 / theta0 > 0; carries the offending location.
class InitError : public Error {
 public:
  InitError(double x, const std::string& what) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

// Raised by the time stepper; carries the time at which the step failed.
class SolverError : public Error {
 public:
  SolverError(double t, const std::string& what) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

// Temperature dropped below SolverConfig::theta_floor.
class FloorBreachError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Specific volume became non-positive.
class VolumeCollapseError : public SolverError {
 public:
  using SolverError::SolverError;
};

class FitError : public Error {
 public:
  using Error::Error;
};

// A state history that does not cover the requested time.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Malformed input series or files.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace outerpress
