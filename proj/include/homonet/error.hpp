#pragma once

#include <stdexcept>
#include <string>

namespace homonet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or model parameters, raised before any sampling.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an operation's arguments was violated.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A run stopped because it exceeded its edge or time budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace homonet
