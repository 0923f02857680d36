// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_ERRORS_HPP
#define SPINBOSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinboson
{

// Precondition on a parameter or argument violated.
class DomainError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to reach its tolerance. `estimate` carries the
// routine-specific diagnostic (distance to spectrum, tail bound, residual).
class NumericalError : public std::runtime_error
{
public:
  NumericalError(const std::string &what, double estimate = 0.0)
    : std::runtime_error(what), estimate_(estimate)
  {
  }
  double estimate() const { return estimate_; }

private:
  double estimate_;
};

}  // namespace spinboson

#endif  // SPINBOSON_ERRORS_HPP
