#pragma once

#include <stdexcept>
#include <string>

namespace hsets {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation applied outside its mathematical domain (x = 0 in Z*, 0 in a product base, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: spec files, set expressions, unknown ids.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parameters that violate a construction or proof precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configured window, modulus or term-count cap was exceeded.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsets
