#pragma once

#include <stdexcept>
#include <string>

namespace proxyvar {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distribution parameter is outside its domain (mu not in (0,1), a >= b, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A requested quantity overflows or is not representable (extreme moment orders).
class RangeError : public Error {
 public:
  using Error::Error;
};

// A series or finite-difference evaluation did not meet its accuracy budget.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// The law is a point mass; proxy variances are undefined.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// An iterative solver exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace proxyvar
