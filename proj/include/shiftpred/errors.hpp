#pragma once

#include <stdexcept>
#include <string>

namespace shiftpred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index arithmetic left the guarded range [-2^62, 2^62].
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A windowed computation was asked for values outside the data it holds.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial search exceeded its configured guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A witness family failed one of its admissibility clauses.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Quadrature was requested below the resolution guard.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (configuration files, parameters, CLI flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftpred
