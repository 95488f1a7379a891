#pragma once

#include <stdexcept>
#include <string>

namespace vflow {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or violated preconditions (bad fraction, step sizes, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Grid or vector sizes that do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A solver produced non-finite iterates or failed to converge.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Malformed file header or payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vflow
