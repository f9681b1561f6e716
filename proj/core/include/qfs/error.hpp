#pragma once

#include <stdexcept>
#include <string>

namespace qfs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (bad file, bad dimension, bad parameter).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A solver or enumeration guard was violated (e.g. exhaustive search on too many variables).
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfs
