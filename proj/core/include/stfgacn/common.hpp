#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace stfgacn {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The line-of-sight parameterization hit a pole (|dy/dx| > 1, dx = 0, or a
/// zero displacement). Callers reject or resample the trajectory.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Radar layout unusable for graph construction (coincident radars, N < 2).
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Min-max normalization over a constant signal (max == min).
class ConstantSignal : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

/// Tensor/layer dimensions do not line up; message names both shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Loss or gradient became non-finite during training.
class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Power convention throughout: linear = 10^(dB/10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

}  // namespace stfgacn
