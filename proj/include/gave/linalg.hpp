#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "gave/matrix.hpp"

namespace gave {

// ---------------------------------------------------------------------------
// Splittings, norms and entrywise transforms
// ---------------------------------------------------------------------------

/// Returns (D, L, U) with A = D - L - U: L and U are the *negated* strict
/// lower and upper triangles. Throws DimensionError for non-square input.
TriangularSplit split_dlu(const Matrix& a);

/// Maximum absolute row sum.
double inf_norm(const Matrix& a) noexcept;
double inf_norm(std::span<const double> x) noexcept;
double norm2(std::span<const double> x) noexcept;

Matrix abs_matrix(const Matrix& a);

/// <A>: |a_ii| on the diagonal, -|a_ij| elsewhere.
Matrix comparison_matrix(const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);

/// A diag(s): column j scaled by s[j].
Matrix scale_columns(const Matrix& a, std::span<const double> s);

/// y = A x.
Vector multiply(const Matrix& a, std::span<const double> x);

/// Which stored entries a partial product reads.
enum class Part { Diagonal, StrictLower, StrictUpper, Lower, Upper };

/// y = P x where P keeps only `part` of A (the triangles are not negated).
Vector multiply_part(const Matrix& a, Part part, std::span<const double> x);

Vector abs_vector(std::span<const double> x);
bool all_finite(std::span<const double> x) noexcept;

// ---------------------------------------------------------------------------
// Matrix-class predicates
// ---------------------------------------------------------------------------

/// Every off-diagonal entry <= tol.
bool is_z_matrix(const Matrix& a, double tol = 0.0);

/// Z-matrix whose solution of A x = e is strictly positive (every x_i > tol).
/// For a Z-matrix this is equivalent to A being nonsingular with A^{-1} >= 0.
/// A singular factorization yields false.
bool is_m_matrix(const Matrix& a, double tol);

/// Uses default_m_matrix_tol(a).
bool is_m_matrix(const Matrix& a);

/// 1e-12 / ||A||_inf, the scale of the smallest admissible component of A^{-1}e.
double default_m_matrix_tol(const Matrix& a) noexcept;

// ---------------------------------------------------------------------------
// Linear solves
// ---------------------------------------------------------------------------

/// LU factorization with partial pivoting, factored once and reused.
///
/// Narrow-banded matrices use a band LU whose fill stays inside
/// lower + (lower + upper) diagonals; everything else goes to a dense LU.
class LuFactorization {
 public:
  /// Throws DimensionError for non-square input and SingularMatrixError when
  /// a pivot is numerically zero.
  explicit LuFactorization(const Matrix& a);
  ~LuFactorization();
  LuFactorization(LuFactorization&&) noexcept;
  LuFactorization& operator=(LuFactorization&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  bool uses_band_storage() const noexcept;

  Vector solve(std::span<const double> rhs) const;

 private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

/// Dense semantics: x with A x = rhs.
Vector solve_linear(const Matrix& a, std::span<const double> rhs);

/// Forward substitution. `l` must be lower triangular with a nonzero diagonal.
Vector lower_triangular_solve(const Matrix& l, std::span<const double> rhs);

/// Solves (D + s * SL) x = rhs where D and SL are the diagonal and strict lower
/// triangle of `a` as stored; the upper triangle of `a` is ignored.
/// With s = 1 this is (D_A - L_A) x = rhs.
Vector solve_lower_part(const Matrix& a, std::span<const double> rhs, double strict_scale = 1.0);

}  // namespace gave
