#pragma once

#include <stdexcept>
#include <string>

namespace plwe {

// Base of every error raised by the library. The CLI maps each subclass to
// an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (inverting zero,
// a non-prime modulus, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (alpha not a root, order
// mismatch, repeated roots, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data, e.g. a ring file whose stored roots do
// not satisfy the ring invariants.
class InputError : public Error {
 public:
  using Error::Error;
};

// The requested computation exceeds a configured enumeration budget.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::string suggestion = {})
      : Error(what), suggestion_(std::move(suggestion)) {}
  const std::string& suggestion() const { return suggestion_; }

 private:
  std::string suggestion_;
};

// A bounded search ran out of candidates or iterations.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

// Floating-point pipeline failed to converge or is too ill-conditioned.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace plwe
