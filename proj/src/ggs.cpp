#include "gave/ggs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"
#include "iteration.hpp"

namespace gave {

namespace {

inline double branch(double a, double b, double c) noexcept {
  return c >= 0.0 ? c / (a - b) : c / (a + b);
}

// Sum of row[j] * f(x[j]) over the stored columns j in [lo, hi).
template <class F>
double row_sum(const Matrix& m, std::size_t i, std::size_t lo, std::size_t hi,
               std::span<const double> x, F f) noexcept {
  const std::size_t begin = m.row_begin(i);
  const std::size_t end = m.row_end(i);
  lo = std::max(lo, begin);
  hi = std::min(hi, end);
  const auto r = m.row(i);
  double sum = 0.0;
  for (std::size_t j = lo; j < hi; ++j) sum += r[j - begin] * f(x[j]);
  return sum;
}

}  // namespace

double scalar_branch_solve(double a, double b, double c) {
  if (!(a > std::abs(b))) {
    throw PreconditionError("a x - b|x| = c needs a > |b| (a = " + std::to_string(a) +
                            ", b = " + std::to_string(b) + ")");
  }
  return branch(a, b, c);
}

void require_ggs_diagonal(const GaveProblem& problem) {
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const double a_ii = problem.a()(i, i);
    const double b_ii = problem.b_mat()(i, i);
    if (!(a_ii > std::abs(b_ii))) throw DiagonalDominanceError(i, a_ii, b_ii);
  }
}

void ggs_sweep_in_place(const GaveProblem& problem, std::span<double> x) {
  const Matrix& a = problem.a();
  const Matrix& b = problem.b_mat();
  const auto& rhs = problem.rhs();
  const std::size_t n = problem.size();
  const auto ident = [](double v) { return v; };
  const auto absv = [](double v) { return std::abs(v); };
  std::span<const double> xs(x.data(), x.size());
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    s -= row_sum(a, i, 0, i, xs, ident);
    s += row_sum(b, i, 0, i, xs, absv);
    s -= row_sum(a, i, i + 1, n, xs, ident);
    s += row_sum(b, i, i + 1, n, xs, absv);
    x[i] = branch(a(i, i), b(i, i), s);
  }
}

Vector ggs_sweep(const GaveProblem& problem, std::span<const double> x_prev) {
  if (x_prev.size() != problem.size()) throw DimensionError("ggs_sweep: x_prev has wrong length");
  require_ggs_diagonal(problem);
  Vector x(x_prev.begin(), x_prev.end());
  ggs_sweep_in_place(problem, x);
  return x;
}

SolveReport solve_ggs(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("ggs", config);
  require_ggs_diagonal(problem);
  return driver.run(
      config.initial_x(problem.size()),
      [&](Vector& x) {
        ggs_sweep_in_place(problem, x);
        return true;
      },
      [&](const Vector& x) { return gave_residual(problem, x); });
}

}  // namespace gave
