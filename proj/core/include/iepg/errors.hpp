#pragma once

#include <stdexcept>
#include <string>

namespace iepg {

/// Violated precondition or malformed input. Maps to CLI exit status 3.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric solver could not produce a certified result. Carries the best
/// residual reached so callers can decide whether to retry with other
/// parameters. Maps to CLI exit status 2.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  explicit NumericError(const std::string& what)
      : NumericError(what, -1.0) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// The request is outside what the library can decide (for example a graph
/// family whose multiplicity lists are not characterised). Never guessed.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace iepg
