#pragma once

#include <stdexcept>
#include <string>

namespace nabla {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the region where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A gamma ratio whose numerator sits on a pole while the denominator is finite.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The solvability constant vanishes, so no Green's function exists.
class SingularProblem : public Error {
 public:
  using Error::Error;
};

/// Sign hypotheses (alpha, beta, gamma, delta >= 0, beta >= alpha, xi > 0) do not hold.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// LU factorization hit a pivot below the singularity threshold.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Eigenpotential search found no determinant sign change in the bracket.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nabla
