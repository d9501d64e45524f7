#pragma once

#include <stdexcept>
#include <string>

namespace layerfd {

// Base of every error raised by the library. The CLI maps ConfigError to a
// usage failure and everything else to a computational failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularCoefficientError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class AssumptionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedProblemError : public Error {
 public:
  using Error::Error;
};

}  // namespace layerfd
