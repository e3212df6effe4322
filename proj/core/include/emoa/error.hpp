#pragma once

#include <stdexcept>
#include <string>

namespace emoa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objective vectors (or a vector and a frame/reference) disagree in length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InputError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public InputError {
 public:
  using InputError::InputError;
};

/// A file did not follow the expected line format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

class RegistrationError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// Raised internally when a replay exceeds its wall-clock budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded() : Error("time budget exceeded") {}
};

}  // namespace emoa
