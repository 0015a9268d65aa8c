#pragma once

#include <stdexcept>
#include <string>

namespace ufg {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input: parse failures, mixed model points,
// non-square determinants, empty generator lists.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangle : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Operation requires a specific isometry class (e.g. hyperbolic).
class ClassError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Two hyperbolic isometries share an axis endpoint.
class AsymptoticAxes : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A one-sided search came back empty. Never a claim about the group.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Every generator fixes the endpoint pair of the chosen axis.
class ElementaryGroup : public NotFound {
 public:
  using NotFound::NotFound;
};

// An empirical constant produced an outcome the lemmas rule out
// (e.g. a descent step that failed to shrink the displacement).
class SoundnessViolation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ufg
