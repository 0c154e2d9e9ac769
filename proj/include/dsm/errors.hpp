#pragma once

#include <stdexcept>

namespace dsm {

// Error taxonomy shared by the library and the CLI front end.
// The CLI maps these onto process exit codes: invalid arguments and
// hypothesis violations are usage errors (2), budget overruns are
// resource errors (3), failed mathematical checks are verification
// failures (1).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed parameters or inputs outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured memory or iteration budget was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A checked mathematical invariant failed. Thrown instead of silently
/// continuing: any occurrence means either a bug or a falsified theorem.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A verifier was invoked on parameters outside the hypotheses of the
/// statement it checks.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dsm
