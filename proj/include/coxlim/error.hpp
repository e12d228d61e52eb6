#pragma once

#include <stdexcept>
#include <string>

namespace coxlim {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed matrices, wrong signature, reducible systems,
// preconditions the caller could have checked.  CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation that did not reach its accuracy target or hit a resource
// cap.  CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxlim
