#pragma once

#include <stdexcept>
#include <string>

namespace cilab {

// Base for every error raised by the library. The C API maps the concrete
// subclasses onto status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Precondition on the mathematical object failed (curve not on X, plane
// contained in X, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace cilab
