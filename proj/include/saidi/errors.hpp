#pragma once

#include <stdexcept>
#include <string>

namespace saidi {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed network, unknown ids, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a documented size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace saidi
