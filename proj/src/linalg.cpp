#include "gave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gave/errors.hpp"

namespace gave {

namespace {

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_length(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) +
                         ", got " + std::to_string(got));
  }
}

bool part_contains(Part part, std::size_t i, std::size_t j) noexcept {
  switch (part) {
    case Part::Diagonal: return i == j;
    case Part::StrictLower: return j < i;
    case Part::StrictUpper: return j > i;
    case Part::Lower: return j <= i;
    case Part::Upper: return j >= i;
  }
  return false;
}

}  // namespace

TriangularSplit split_dlu(const Matrix& a) {
  require_square(a, "split_dlu");
  const std::size_t n = a.rows();
  TriangularSplit s{Matrix::banded(n, n, 0, 0), Matrix::banded(n, n, a.lower_bandwidth(), 0),
                    Matrix::banded(n, n, 0, a.upper_bandwidth())};
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::size_t j = begin + k;
      if (j == i) s.diag.set(i, j, r[k]);
      else if (j < i) s.strict_lower.set(i, j, -r[k]);
      else s.strict_upper.set(i, j, -r[k]);
    }
  }
  return s;
}

double inf_norm(const Matrix& a) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (double v : a.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

double inf_norm(std::span<const double> x) noexcept {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

double norm2(std::span<const double> x) noexcept {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

Matrix abs_matrix(const Matrix& a) {
  return a.map([](double v) { return std::abs(v); });
}

Matrix comparison_matrix(const Matrix& a) {
  require_square(a, "comparison_matrix");
  Matrix out = a.map([](double v) { return -std::abs(v); });
  for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, i, std::abs(a(i, i)));
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Matrix operator*(double s, const Matrix& a) {
  return a.map([s](double v) { return s * v; });
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Matrix out = Matrix::banded(a.rows(), b.cols(), a.lower_bandwidth() + b.lower_bandwidth(),
                              a.upper_bandwidth() + b.upper_bandwidth());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Vector acc(b.cols(), 0.0);
    const auto ar = a.row(i);
    const std::size_t abegin = a.row_begin(i);
    for (std::size_t k = 0; k < ar.size(); ++k) {
      const std::size_t p = abegin + k;
      const auto br = b.row(p);
      const std::size_t bbegin = b.row_begin(p);
      for (std::size_t t = 0; t < br.size(); ++t) acc[bbegin + t] += ar[k] * br[t];
    }
    for (std::size_t j = out.row_begin(i); j < out.row_end(i); ++j) out.set(i, j, acc[j]);
  }
  return out;
}

Matrix scale_columns(const Matrix& a, std::span<const double> s) {
  require_length(a.cols(), s.size(), "scale_columns");
  Matrix out = Matrix::zeros_like(a);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    for (std::size_t k = 0; k < r.size(); ++k) out.set(i, begin + k, r[k] * s[begin + k]);
  }
  return out;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  require_length(a.cols(), x.size(), "multiply");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    const double* xs = x.data() + a.row_begin(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) sum += r[k] * xs[k];
    y[i] = sum;
  }
  return y;
}

Vector multiply_part(const Matrix& a, Part part, std::span<const double> x) {
  require_length(a.cols(), x.size(), "multiply_part");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (part_contains(part, i, begin + k)) sum += r[k] * x[begin + k];
    }
    y[i] = sum;
  }
  return y;
}

Vector abs_vector(std::span<const double> x) {
  Vector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::abs(v); });
  return out;
}

bool all_finite(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

bool is_z_matrix(const Matrix& a, double tol) {
  require_square(a, "is_z_matrix");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (begin + k != i && r[k] > tol) return false;
    }
  }
  return true;
}

double default_m_matrix_tol(const Matrix& a) noexcept {
  const double scale = inf_norm(a);
  return scale > 0.0 ? 1e-12 / scale : 1e-12;
}

bool is_m_matrix(const Matrix& a, double tol) {
  if (!is_z_matrix(a)) return false;
  Vector x;
  try {
    x = solve_linear(a, Vector(a.rows(), 1.0));
  } catch (const SingularMatrixError&) {
    return false;
  }
  return std::all_of(x.begin(), x.end(), [tol](double v) { return v > tol; });
}

bool is_m_matrix(const Matrix& a) { return is_m_matrix(a, default_m_matrix_tol(a)); }

Vector solve_linear(const Matrix& a, std::span<const double> rhs) {
  return LuFactorization(a).solve(rhs);
}

Vector lower_triangular_solve(const Matrix& l, std::span<const double> rhs) {
  require_square(l, "lower_triangular_solve");
  for (std::size_t i = 0; i < l.rows(); ++i) {
    const auto r = l.row(i);
    const std::size_t begin = l.row_begin(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (begin + k > i && r[k] != 0.0) {
        throw PreconditionError("lower_triangular_solve: entry (" + std::to_string(i) + ", " +
                                std::to_string(begin + k) + ") above the diagonal is nonzero");
      }
    }
  }
  return solve_lower_part(l, rhs, 1.0);
}

Vector solve_lower_part(const Matrix& a, std::span<const double> rhs, double strict_scale) {
  require_square(a, "solve_lower_part");
  require_length(a.rows(), rhs.size(), "solve_lower_part");
  const std::size_t n = a.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    double sum = 0.0;
    for (std::size_t j = begin; j < i; ++j) sum += r[j - begin] * x[j];
    const double d = a(i, i);
    if (d == 0.0) {
      throw SingularMatrixError("zero diagonal entry at row " + std::to_string(i));
    }
    x[i] = (rhs[i] - strict_scale * sum) / d;
  }
  return x;
}

}  // namespace gave
