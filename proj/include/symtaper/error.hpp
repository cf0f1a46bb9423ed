#pragma once

#include <stdexcept>
#include <string>

namespace symtaper {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of mismatched size or a violated operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (FCIDUMP, symmetry JSON, Pauli-sum text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A supplied point-group operation does not leave the Hamiltonian invariant.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug upstream.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the requested solver path.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent command-line options.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace symtaper
