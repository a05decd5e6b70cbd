#pragma once

#include <stdexcept>
#include <string>

namespace lll {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponential enumeration was requested beyond its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A resampling oracle was invoked on a state where its event does not hold,
/// or was handed a malformed event.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance data (schema violations, inconsistent sizes).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace lll
