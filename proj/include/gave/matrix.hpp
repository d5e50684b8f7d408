#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gave {

using Vector = std::vector<double>;

/// Real matrix stored row-major.
///
/// Entries outside the band `-lower_bandwidth() <= j - i <= upper_bandwidth()`
/// are structural zeros; a matrix whose band covers every entry is plain dense
/// storage. Band bounds only affect storage and cost, never the value of any
/// operation: `(*this)(i, j)` is defined for every position.
///
/// Every stored entry is finite. Mutation is limited to `set`, which keeps
/// that invariant; everything else returns new matrices.
class Matrix {
 public:
  Matrix() = default;

  /// Dense zero matrix.
  Matrix(std::size_t rows, std::size_t cols);

  /// Dense matrix from row-major data of size rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix banded(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix zeros_like(const Matrix& shape);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t lower_bandwidth() const noexcept { return lower_; }
  std::size_t upper_bandwidth() const noexcept { return upper_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_dense() const noexcept;
  bool in_band(std::size_t i, std::size_t j) const noexcept;

  /// First and one-past-last stored column of row i.
  std::size_t row_begin(std::size_t i) const noexcept;
  std::size_t row_end(std::size_t i) const noexcept;

  /// Stored segment of row i, covering columns [row_begin(i), row_end(i)).
  std::span<const double> row(std::size_t i) const noexcept;

  double operator()(std::size_t i, std::size_t j) const noexcept;

  /// Throws DimensionError for a nonzero value outside the band and
  /// std::invalid_argument for a non-finite value.
  void set(std::size_t i, std::size_t j, double value);

  Vector diagonal_entries() const;
  double max_abs() const noexcept;

  /// Same values under wider (or equal) band bounds.
  Matrix widened(std::size_t lower, std::size_t upper) const;

  /// Same values under the tightest band that holds every nonzero.
  Matrix compacted() const;

  /// Applies f to every stored entry; f(0) must be 0 so the band stays valid.
  template <class F>
  Matrix map(F f) const {
    Matrix out = *this;
    for (double& v : out.data_) v = f(v);
    out.check_finite();
    return out;
  }

  /// Entrywise combination under the union of both bands; f(0, 0) must be 0.
  template <class F>
  friend Matrix combine(const Matrix& a, const Matrix& b, F f) {
    Matrix out = Matrix::union_shape(a, b);
    for (std::size_t i = 0; i < out.rows_; ++i) {
      double* dst = out.row_ptr(i);
      for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) {
        *dst++ = f(a(i, j), b(i, j));
      }
    }
    out.check_finite();
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept;

 private:
  Matrix(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper);

  static Matrix union_shape(const Matrix& a, const Matrix& b);
  void build_offsets();
  void check_finite() const;
  double* row_ptr(std::size_t i) noexcept { return data_.data() + offsets_[i]; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;
};

/// Diagonal part and the negated strict triangles, so that A = D - L - U.
struct TriangularSplit {
  Matrix diag;
  Matrix strict_lower;
  Matrix strict_upper;
};

}  // namespace gave
