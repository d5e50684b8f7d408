#include "gave/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

GaveProblem::GaveProblem(Matrix a, Matrix b_mat, Vector rhs)
    : a_(std::move(a)), b_mat_(std::move(b_mat)), rhs_(std::move(rhs)) {
  const std::size_t n = rhs_.size();
  if (!a_.is_square() || !b_mat_.is_square() || a_.rows() != n || b_mat_.rows() != n) {
    throw DimensionError("GAVE needs n x n matrices A and B and a length-n b; got A " +
                         std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()) + ", B " +
                         std::to_string(b_mat_.rows()) + "x" + std::to_string(b_mat_.cols()) +
                         ", b " + std::to_string(n));
  }
  if (!all_finite(rhs_)) throw std::invalid_argument("right-hand side must be finite");
}

Vector gave_residual_vector(const GaveProblem& problem, std::span<const double> x) {
  Vector r = multiply(problem.a(), x);
  const Vector bx = multiply(problem.b_mat(), abs_vector(x));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - bx[i] - problem.rhs()[i];
  return r;
}

double gave_residual(const GaveProblem& problem, std::span<const double> x) {
  const double num = norm2(gave_residual_vector(problem, x));
  const double den = norm2(problem.rhs());
  return den > 0.0 ? num / den : num;
}

X0Rule parse_x0_rule(std::string_view name) {
  if (name == "zeros") return X0Rule::Zeros;
  if (name == "alt10" || name == "ones-zeros-alternating") return X0Rule::Alt10;
  throw ConfigError("unknown initial-guess rule '" + std::string(name) +
                    "' (expected zeros or alt10)");
}

std::string_view to_string(X0Rule rule) noexcept {
  return rule == X0Rule::Zeros ? "zeros" : "alt10";
}

Vector default_x0(X0Rule rule, std::size_t n) {
  Vector x(n, 0.0);
  if (rule == X0Rule::Alt10) {
    for (std::size_t i = 0; i < n; i += 2) x[i] = 1.0;
  }
  return x;
}

Vector default_x0(std::string_view rule, std::size_t n) { return default_x0(parse_x0_rule(rule), n); }

Vector OmegaRule::build(const Matrix& a) const {
  if (diagonal) {
    if (diagonal->size() != a.rows()) throw ConfigError("explicit Omega diagonal has wrong length");
    return *diagonal;
  }
  Vector d = a.diagonal_entries();
  for (double& v : d) v *= scale;
  return d;
}

Y0Rule parse_y0_rule(std::string_view name) {
  if (name == "rhs") return Y0Rule::Rhs;
  if (name == "zeros") return Y0Rule::Zeros;
  if (name == "abs-x0") return Y0Rule::AbsX0;
  throw ConfigError("unknown y0 rule '" + std::string(name) + "' (expected rhs, zeros or abs-x0)");
}

std::string_view to_string(Y0Rule rule) noexcept {
  switch (rule) {
    case Y0Rule::Rhs: return "rhs";
    case Y0Rule::Zeros: return "zeros";
    case Y0Rule::AbsX0: return "abs-x0";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter == 0) throw ConfigError("max_iter must be at least 1");
}

void SolverConfig::validate_tau() const {
  if (!(tau > 0.0 && tau <= 2.0)) throw ConfigError("tau must lie in (0, 2]");
}

Vector SolverConfig::initial_x(std::size_t n) const {
  if (const auto* rule = std::get_if<X0Rule>(&x0)) return default_x0(*rule, n);
  const auto& v = std::get<Vector>(x0);
  if (v.size() != n) throw DimensionError("initial guess has wrong length");
  return v;
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::MaxIterations: return "MaxIterations";
    case Termination::NumericalBreakdown: return "NumericalBreakdown";
  }
  return "?";
}

double SolveReport::final_residual() const noexcept {
  return residual_history.empty() ? std::numeric_limits<double>::quiet_NaN()
                                  : residual_history.back();
}

}  // namespace gave
