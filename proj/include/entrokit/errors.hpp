#pragma once

#include <stdexcept>
#include <string>

namespace entrokit {

/// Base of every error raised by the library. The CLI maps all of these to
/// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (x <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Deformation parameters (k, r), q, lambda, or a scaling constant out of range.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// Malformed probability object (negative mass, bad normalization, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Some p_i > 0 where q_i = 0.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

/// Invalid sweep configuration or unknown property name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace entrokit
