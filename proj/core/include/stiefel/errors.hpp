#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

// Base of every error raised by the library. Subclasses name the failure
// class so callers can branch on type rather than on message text.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A principal matrix logarithm was requested for an orthogonal matrix with an
// eigenvalue at (or numerically next to) -1.
class PrincipalLogUndefined : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

class NotSkew : public Error {
 public:
  using Error::Error;
};

class NotTangent : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ChartOutOfBounds : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

class ShootingDivergence : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
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

}  // namespace stiefel
