#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quenchlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a type invariant or an operation precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested exactly at a level crossing, where the ground state
/// is degenerate and its derivatives are undefined.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Malformed or mismatching CSV input; `line()` is 1-based.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace quenchlab
