#pragma once

#include <stdexcept>
#include <string>

namespace hyperc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation accepts (bad coordinate,
/// p < 1, rho out of range, unnormalized weights, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on incompatible domains.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this input class (e.g. characters for k != 2).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A checker's structural hypothesis (intersecting, symmetric, ...) does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Unknown checker/generator or an inconsistent suite configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperc
