#pragma once

#include <stdexcept>
#include <string>

namespace perispec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad window, bad parameter, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear solve or eigensolve could not be carried out reliably.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  explicit SolverError(const std::string& what) : Error(what) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_ = 0.0;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace perispec
