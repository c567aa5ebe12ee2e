#pragma once

#include <stdexcept>
#include <string>

namespace coc {

/// Base class for all library errors.  The CLI maps the concrete type to a
/// process exit code (parse / geometry / snapping / caps).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Geometry degeneracies: no minimal geodesic, or an evaluation path ran
/// into the puncture point of the primitive 1-form.
struct GeometryError : Error {
  using Error::Error;
};

struct AntipodalDegeneracy : GeometryError {
  using GeometryError::GeometryError;
};

struct PoleProximity : GeometryError {
  using GeometryError::GeometryError;
};

/// Cylindrical-coordinate degeneracy on a twist axis.  The closed-form
/// differential used here is chart-free, so this is never thrown by the
/// library itself; the type is kept for API completeness.
struct ChartDegeneracy : GeometryError {
  using GeometryError::GeometryError;
};

struct QuadratureNonConvergence : Error {
  using Error::Error;
};

/// A value that must lie in a discrete coefficient group missed it by more
/// than the snapping tolerance.  Aborting beats rounding silently.
struct SnapFailure : Error {
  double raw = 0.0;
  double residual = 0.0;
  SnapFailure(const std::string& msg, double raw_, double residual_)
      : Error(msg), raw(raw_), residual(residual_) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotACycle : Error {
  using Error::Error;
};

struct NotCommuting : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace coc
