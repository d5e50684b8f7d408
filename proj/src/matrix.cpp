#include "gave/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gave/errors.hpp"

namespace gave {

DiagonalDominanceError::DiagonalDominanceError(std::size_t index, double a_ii, double b_ii)
    : PreconditionError("diagonal condition a_ii > |b_ii| fails at row " + std::to_string(index) +
                        " (a_ii = " + std::to_string(a_ii) + ", b_ii = " + std::to_string(b_ii) +
                        ")"),
      index_(index) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  lower_ = std::min(lower, rows - 1);
  upper_ = std::min(upper, cols - 1);
  build_offsets();
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : Matrix(rows, cols, rows == 0 ? 0 : rows - 1, cols == 0 ? 0 : cols - 1) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  lower_ = rows - 1;
  upper_ = cols - 1;
  offsets_.resize(rows + 1);
  for (std::size_t i = 0; i <= rows; ++i) offsets_[i] = i * cols;
  if (row_major.size() != rows * cols) {
    throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(row_major.size()));
  }
  data_ = std::move(row_major);
  check_finite();
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n_rows * n_cols);
  for (const auto& r : rows) {
    if (r.size() != n_cols) throw DimensionError("ragged row in matrix literal");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(n_rows, n_cols, std::move(data));
}

Matrix Matrix::banded(std::size_t rows, std::size_t cols, std::size_t lower, std::size_t upper) {
  return Matrix(rows, cols, lower, upper);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n, 0, 0);
  std::fill(out.data_.begin(), out.data_.end(), 1.0);
  return out;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix out(diag.size(), diag.size(), 0, 0);
  std::copy(diag.begin(), diag.end(), out.data_.begin());
  out.check_finite();
  return out;
}

Matrix Matrix::zeros_like(const Matrix& shape) {
  return Matrix(shape.rows_, shape.cols_, shape.lower_, shape.upper_);
}

void Matrix::build_offsets() {
  offsets_.assign(rows_ + 1, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    offsets_[i + 1] = offsets_[i] + (row_end(i) - row_begin(i));
  }
  data_.assign(offsets_.back(), 0.0);
}

void Matrix::check_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
  }
}

bool Matrix::is_dense() const noexcept {
  return lower_ + 1 >= rows_ && upper_ + 1 >= cols_;
}

std::size_t Matrix::row_begin(std::size_t i) const noexcept {
  return std::min(i > lower_ ? i - lower_ : std::size_t{0}, cols_);
}

std::size_t Matrix::row_end(std::size_t i) const noexcept {
  return std::max(std::min(cols_, i + upper_ + 1), row_begin(i));
}

bool Matrix::in_band(std::size_t i, std::size_t j) const noexcept {
  return i < rows_ && j >= row_begin(i) && j < row_end(i);
}

std::span<const double> Matrix::row(std::size_t i) const noexcept {
  return {data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Matrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (!in_band(i, j)) return 0.0;
  return data_[offsets_[i] + (j - row_begin(i))];
}

void Matrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= rows_ || j >= cols_) throw DimensionError("index out of range");
  if (!std::isfinite(value)) throw std::invalid_argument("matrix entries must be finite");
  if (!in_band(i, j)) {
    if (value == 0.0) return;
    throw DimensionError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") lies outside the band");
  }
  data_[offsets_[i] + (j - row_begin(i))] = value;
}

Vector Matrix::diagonal_entries() const {
  const std::size_t n = std::min(rows_, cols_);
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Matrix::widened(std::size_t lower, std::size_t upper) const {
  if (lower < lower_ || upper < upper_) {
    // Narrowing is allowed only when it drops zeros.
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = row_begin(i); j < row_end(i); ++j) {
        const bool kept = (j + lower >= i) && (j <= i + upper);
        if (!kept && (*this)(i, j) != 0.0) throw DimensionError("band would drop a nonzero entry");
      }
    }
  }
  Matrix out(rows_, cols_, lower, upper);
  for (std::size_t i = 0; i < rows_; ++i) {
    double* dst = out.row_ptr(i);
    for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) *dst++ = (*this)(i, j);
  }
  return out;
}

Matrix Matrix::compacted() const {
  std::size_t lower = 0;
  std::size_t upper = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    const std::size_t begin = row_begin(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == 0.0) continue;
      const std::size_t j = begin + k;
      if (j < i) lower = std::max(lower, i - j);
      else upper = std::max(upper, j - i);
    }
  }
  return widened(lower, upper);
}

Matrix Matrix::union_shape(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw DimensionError("shape mismatch: " + std::to_string(a.rows_) + "x" +
                         std::to_string(a.cols_) + " vs " + std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  }
  return Matrix(a.rows_, a.cols_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_));
}

bool operator==(const Matrix& a, const Matrix& b) noexcept {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const std::size_t lo = std::min(a.row_begin(i), b.row_begin(i));
    const std::size_t hi = std::max(a.row_end(i), b.row_end(i));
    for (std::size_t j = lo; j < hi; ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

}  // namespace gave
