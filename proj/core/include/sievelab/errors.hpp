#pragma once

#include <stdexcept>
#include <string>

namespace sievelab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integrand or objective returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : Error(what + " at x=" + std::to_string(abscissa)), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Adaptive refinement ran out of depth before meeting the tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// A computation would exceed a configured work or size budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double required, double budget)
      : Error(what), required_(required), budget_(budget) {}
  double required() const noexcept { return required_; }
  double budget() const noexcept { return budget_; }

 private:
  double required_;
  double budget_;
};

/// Quadratic form is degenerate (or degenerate locally, e.g. empty V mod p).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace sievelab
