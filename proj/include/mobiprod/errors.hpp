#pragma once

#include <stdexcept>
#include <string>

namespace mobiprod {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad probabilities, inconsistent dimensions, unknown ids.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NoStationaryDistribution : public Error {
 public:
  using Error::Error;
};

class ZeroLikelihood : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NonConvexTable : public Error {
 public:
  using Error::Error;
};

class InfeasibleProblem : public Error {
 public:
  using Error::Error;
};

// Branch-and-bound node budget exhausted before optimality was proven.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An LP relaxation that should be integral returned a fractional vertex.
class Prop2Violation : public Error {
 public:
  using Error::Error;
};

class UnsupportedChain : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

class SizeExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mobiprod
