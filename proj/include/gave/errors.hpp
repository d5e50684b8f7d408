#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not agree (non-square where square is required, length mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A factorization or substitution met a (numerically) zero pivot.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// diag(A) > |diag(B)| fails; `index()` is the first offending row (0-based).
class DiagonalDominanceError : public PreconditionError {
 public:
  DiagonalDominanceError(std::size_t index, double a_ii, double b_ii);

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Invalid solver or reformulation parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix/vector text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gave
