#pragma once

#include <stdexcept>
#include <string>

namespace smiet {

/// Argument outside the mathematical domain of an operation (t <= 0, d <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or inconsistent simulation / run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A statistical fit could not be produced from the given samples.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested combination of features is not supported (e.g. spherical shield
/// in the knife-edge self-interference experiment).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace smiet
