#include <Eigen/Dense>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <variant>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double pivot_floor(std::size_t n, double max_abs) {
  return static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_abs;
}

[[noreturn]] void throw_singular(std::size_t k) {
  throw SingularMatrixError("numerically singular pivot at column " + std::to_string(k));
}

// Partial-pivoting LU for a matrix with kl sub- and ku super-diagonals.
// Row i of the work array holds columns [i - kl, i + kl + ku]; the extra kl
// diagonals absorb fill from row interchanges. Multipliers of step k stay in
// `lower_` and are applied in step order during the solve.
class BandLu {
 public:
  BandLu(const Matrix& a) : n_(a.rows()), kl_(a.lower_bandwidth()), ku_(a.upper_bandwidth()) {
    width_ = 2 * kl_ + ku_ + 1;
    work_.assign(n_ * width_, 0.0);
    lower_.assign(n_ * (kl_ + 1), 0.0);
    pivots_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto r = a.row(i);
      for (std::size_t k = 0; k < r.size(); ++k) at(i, a.row_begin(i) + k) = r[k];
    }
    const double floor = pivot_floor(n_, a.max_abs());
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t last_row = std::min(n_ - 1, k + kl_);
      const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
      std::size_t p = k;
      double best = std::abs(at(k, k));
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        if (std::abs(at(i, k)) > best) {
          best = std::abs(at(i, k));
          p = i;
        }
      }
      if (!(best > floor)) throw_singular(k);
      pivots_[k] = p;
      if (p != k) {
        for (std::size_t j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
      }
      const double pivot = at(k, k);
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        const double f = at(i, k) / pivot;
        multiplier(k, i) = f;
        at(i, k) = 0.0;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j <= last_col; ++j) at(i, j) -= f * at(k, j);
      }
    }
  }

  Vector solve(std::span<const double> rhs) const {
    Vector x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n_; ++k) {
      if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
      const std::size_t last_row = std::min(n_ - 1, k + kl_);
      for (std::size_t i = k + 1; i <= last_row; ++i) x[i] -= multiplier(k, i) * x[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
      double sum = x[k];
      for (std::size_t j = k + 1; j <= last_col; ++j) sum -= at(k, j) * x[j];
      x[k] = sum / at(k, k);
    }
    return x;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return work_[i * width_ + (j + kl_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return work_[i * width_ + (j + kl_ - i)]; }
  double& multiplier(std::size_t k, std::size_t i) { return lower_[k * (kl_ + 1) + (i - k)]; }
  double multiplier(std::size_t k, std::size_t i) const {
    return lower_[k * (kl_ + 1) + (i - k)];
  }

  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  std::size_t width_ = 0;
  std::vector<double> work_;
  std::vector<double> lower_;
  std::vector<std::size_t> pivots_;
};

class DenseLu {
 public:
  explicit DenseLu(const Matrix& a) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    RowMajorMatrix dense = RowMajorMatrix::Zero(n, n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const auto r = a.row(i);
      const std::size_t begin = a.row_begin(i);
      for (std::size_t k = 0; k < r.size(); ++k) {
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(begin + k)) = r[k];
      }
    }
    lu_.compute(dense);
    const double floor = pivot_floor(a.rows(), a.max_abs());
    const auto& packed = lu_.matrixLU();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!(std::abs(packed(k, k)) > floor)) throw_singular(static_cast<std::size_t>(k));
    }
  }

  Vector solve(std::span<const double> rhs) const {
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::VectorXd x = lu_.solve(b);
    return Vector(x.data(), x.data() + x.size());
  }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

bool prefer_band(const Matrix& a) {
  const std::size_t width = 2 * a.lower_bandwidth() + a.upper_bandwidth() + 1;
  return 2 * width <= a.rows();
}

}  // namespace

struct LuFactorization::Impl {
  std::variant<BandLu, DenseLu> lu;
};

LuFactorization::LuFactorization(const Matrix& a) : n_(a.rows()) {
  if (!a.is_square()) {
    throw DimensionError("LU factorization needs a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (prefer_band(a)) {
    impl_ = std::make_unique<Impl>(Impl{BandLu(a)});
  } else {
    impl_ = std::make_unique<Impl>(Impl{DenseLu(a)});
  }
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

bool LuFactorization::uses_band_storage() const noexcept {
  return std::holds_alternative<BandLu>(impl_->lu);
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) {
    throw DimensionError("LU solve: expected length " + std::to_string(n_) + ", got " +
                         std::to_string(rhs.size()));
  }
  return std::visit([&](const auto& lu) { return lu.solve(rhs); }, impl_->lu);
}

}  // namespace gave
