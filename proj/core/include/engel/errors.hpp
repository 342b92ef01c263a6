#pragma once

#include <stdexcept>
#include <string>

namespace engel {

/// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (modulus, time past t_supr, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Covector lies in a stratum the operation does not handle.
class StratumError : public Error {
public:
  using Error::Error;
};

/// Nonlinear solve for the rectifying phase did not converge.
class InversionError : public Error {
public:
  using Error::Error;
};

/// Hyperbolic terms or an integrated trajectory left the representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

}  // namespace engel
