#pragma once

#include <stdexcept>
#include <string>

namespace krf {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Metric (or inverse) requested on a matrix whose smallest eigenvalue is
// at or below tolerance.
struct NonPositiveDefinite : Error {
  using Error::Error;
};

// Construction-time invariant failure: input violates Hermitian or Kahler
// symmetry beyond the repair tolerance.
struct SymmetryViolation : Error {
  using Error::Error;
};

struct ZeroVector : Error {
  using Error::Error;
};

struct NegativeKappa : Error {
  using Error::Error;
};

struct NonPositiveTrace : Error {
  using Error::Error;
};

// Test data handed to check_royden does not satisfy the curvature hypothesis.
struct HypothesisViolated : Error {
  using Error::Error;
};

struct GenerationFailed : Error {
  using Error::Error;
};

struct NonPositiveInitialMetric : Error {
  using Error::Error;
};

// The evolving metric degenerated; carries the time of the offending state.
struct PositivityLost : Error {
  explicit PositivityLost(double when, const std::string& what_arg)
      : Error(what_arg), t(when) {}
  double t = 0.0;
};

struct MonitorViolation : Error {
  MonitorViolation(double when, double how_much, const std::string& what_arg)
      : Error(what_arg), t(when), margin(how_much) {}
  double t = 0.0;
  double margin = 0.0;
};

struct LatticeMismatch : Error {
  using Error::Error;
};

struct InitialClassNotKahler : Error {
  using Error::Error;
};

struct BoundViolated : Error {
  using Error::Error;
};

struct NoClosedForm : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace krf
