#pragma once

#include <stdexcept>
#include <string>

namespace sepnmf {

// Error classes map one-to-one onto the CLI exit codes (see tools/sepnmf.cpp).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: rank out of range, shape mismatch, empty input.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed, or the solver reached an impossible state.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Input outside the operation's domain (asymmetric or indefinite matrix).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Matrix is singular where a nonsingular one is required.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Points do not span the space (MVEE) or residuals collapsed early (SPA).
class DegeneracyError : public NumericalError {
 public:
  DegeneracyError(const std::string& what, std::size_t found = 0)
      : NumericalError(what), found_(found) {}
  /// Number of indices selected before the collapse (SPA only).
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t found_;
};

/// Malformed matrix or config file.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sepnmf
