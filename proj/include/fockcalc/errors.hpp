#pragma once

#include <stdexcept>
#include <string>

namespace fockcalc {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition: wrong side, wrong tag, mismatched dimensions.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Bad input data, e.g. a non-finite sample.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Solver failure (non-convergence, singular fit).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; signals a bug upstream of the caller.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockcalc
