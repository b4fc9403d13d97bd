#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (alpha, p, non-projector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix fails the Hermitian / trace / positivity checks of a state.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// Eigen-solver did not converge. Carries a hash of the offending input.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::uint64_t input_hash)
      : Error(what), input_hash_(input_hash) {}
  std::uint64_t input_hash() const { return input_hash_; }

 private:
  std::uint64_t input_hash_;
};

// A quantity that must be nonnegative came out clearly negative.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

// No optimizer restart converged; best_value() is the best seen anyway.
class OptimizerError : public Error {
 public:
  OptimizerError(const std::string& what, double best_value)
      : Error(what), best_value_(best_value) {}
  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

// Malformed or out-of-range configuration / input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewq
