#pragma once

#include <stdexcept>
#include <string>

namespace fgt {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

class InvalidBandwidthError : public Error {
public:
  using Error::Error;
};

class EmptySampleError : public Error {
public:
  using Error::Error;
};

class InvalidParameterError : public Error {
public:
  using Error::Error;
};

class InvalidConfigError : public Error {
public:
  using Error::Error;
};

class DegenerateCaseError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Numerical routine failed to reach the requested accuracy. Carries the best
// estimate obtained so callers can still inspect it.
class NumericalFailureError : public Error {
public:
  NumericalFailureError(const std::string& what, double best_estimate)
    : Error(what)
    , best_(best_estimate)
  {
  }

  double best_estimate() const noexcept { return best_; }

private:
  double best_;
};

} // namespace fgt
