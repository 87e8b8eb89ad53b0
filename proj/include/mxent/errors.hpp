#pragma once

#include <stdexcept>
#include <string>

namespace mxent {

/// Malformed arguments: wrong dimensions, non-finite entries, bad ranges.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a matrix function (e.g. a non-positive eigenvalue).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mxent
