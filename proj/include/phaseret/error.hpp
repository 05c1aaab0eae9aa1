#pragma once

#include <stdexcept>
#include <string>

namespace phaseret {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the input exceeds the configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed literal or input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace phaseret
