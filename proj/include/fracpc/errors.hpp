#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracpc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent problem, grid or solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its precondition (bad index, short history, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Unknown registry key.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Right-hand side evaluated at a singular point.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Closed-form weight or intermediate value is not finite.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// File system failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracpc
