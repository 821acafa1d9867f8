#pragma once

#include <stdexcept>
#include <string>

namespace matpow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A product or power produced a NaN or infinity.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Input violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace matpow
