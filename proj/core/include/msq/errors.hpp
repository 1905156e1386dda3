#pragma once

#include <stdexcept>
#include <string>

namespace msq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument values.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A feature cannot be resolved on the requested grid.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// Requested mode order is too high for the grid.
class AliasingError : public Error {
public:
  using Error::Error;
};

/// Operands live on different grids.
class GridMismatchError : public Error {
public:
  using Error::Error;
};

/// A numerical solve failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Result violates a physical constraint (e.g. uncertainty relation).
class PhysicsError : public Error {
public:
  using Error::Error;
};

/// File format or filesystem failure.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace msq
