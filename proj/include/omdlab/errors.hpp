#pragma once

#include <stdexcept>
#include <string>

namespace omdlab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, infeasible point, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a regularizer or cost function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Linear algebra broke down (e.g. a non positive-definite information matrix).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A mirror-step solver failed to bracket or converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The Hessian quotient used to certify relative smoothness is undefined.
class CertificationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace omdlab
