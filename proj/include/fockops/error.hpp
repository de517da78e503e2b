#pragma once

#include <stdexcept>
#include <string>

namespace fockops {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Quadrature refinement cap reached with the error estimate above tolerance.
class NonConvergence : public Error {
public:
  using Error::Error;
};

/// A sampler returned NaN or Inf at a quadrature node.
class InvalidIntegrand : public Error {
public:
  using Error::Error;
};

/// The integrand grows at least as fast as the Gaussian weight decays.
class DivergentTail : public Error {
public:
  using Error::Error;
};

/// A symbol or intermediate polynomial exceeds the supported degree.
class DegreeCap : public Error {
public:
  using Error::Error;
};

/// Contract violation on the arguments of an operation.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Dense decomposition failed to produce finite singular values.
class NumericalDegeneracy : public Error {
public:
  using Error::Error;
};

/// Malformed or invalid run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace fockops
