#pragma once

#include <stdexcept>
#include <string>

namespace imdet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Distribution or operation parameters are outside their valid range.
class ParameterError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Two measures (or a measure and a set) live on different groups.
class DomainMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The operation is not offered for this group domain.
class UnsupportedDomain : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A density segment does not have a finite integral.
class NonIntegrableDensity : public Error {
 public:
  using Error::Error;
};

/// Sign changes of a density could not be localized at the configured
/// sampling resolution.
class UnresolvedSign : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue or quadrature routine failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. `path()` is a JSON pointer to the offending
/// node.
class ParseError : public PreconditionError {
 public:
  ParseError(std::string path, const std::string& what)
      : PreconditionError(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Two independent computations that must agree did not (oracle
/// disagreement, catalog regression mismatch).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace imdet
