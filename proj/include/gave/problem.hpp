#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gave/matrix.hpp"

namespace gave {

/// A x - B |x| = b.
class GaveProblem {
 public:
  /// Throws DimensionError unless A and B are n x n and rhs has length n, and
  /// std::invalid_argument for a non-finite rhs entry.
  GaveProblem(Matrix a, Matrix b_mat, Vector rhs);

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b_mat() const noexcept { return b_mat_; }
  const Vector& rhs() const noexcept { return rhs_; }
  std::size_t size() const noexcept { return rhs_.size(); }

 private:
  Matrix a_;
  Matrix b_mat_;
  Vector rhs_;
};

/// ||A x - B|x| - b||_2 / ||b||_2, or the absolute norm when b = 0.
double gave_residual(const GaveProblem& problem, std::span<const double> x);

/// A x - B |x| - b.
Vector gave_residual_vector(const GaveProblem& problem, std::span<const double> x);

enum class X0Rule { Zeros, Alt10 };

/// "zeros" or "alt10" (alias "ones-zeros-alternating"); throws ConfigError otherwise.
X0Rule parse_x0_rule(std::string_view name);
std::string_view to_string(X0Rule rule) noexcept;

/// The named pattern tiled to length n: zeros -> (0,0,...), alt10 -> (1,0,1,0,...).
Vector default_x0(X0Rule rule, std::size_t n);
Vector default_x0(std::string_view rule, std::size_t n);

/// Omega = scale * D_A, or an explicit diagonal when one is given.
struct OmegaRule {
  double scale = 0.5;
  std::optional<Vector> diagonal;

  Vector build(const Matrix& a) const;
};

/// Start of the auxiliary y sequence in the two-sequence comparators.
enum class Y0Rule { Rhs, Zeros, AbsX0 };

Y0Rule parse_y0_rule(std::string_view name);
std::string_view to_string(Y0Rule rule) noexcept;

struct SolverConfig {
  double tol = 1e-8;
  std::size_t max_iter = 100;
  std::variant<X0Rule, Vector> x0 = X0Rule::Zeros;

  // Comparator parameters. The GGS solvers never read these.
  double tau = 1.0;
  OmegaRule omega;
  Y0Rule y0 = Y0Rule::Rhs;
  double q1 = 10.0;
  double q2 = 0.5;

  /// Record every iterate in SolveReport::iterates.
  bool keep_iterates = false;

  /// Throws ConfigError for tol <= 0 or max_iter == 0.
  void validate() const;

  /// Throws ConfigError for tau outside (0, 2]; checked by the relaxed methods only.
  void validate_tau() const;

  Vector initial_x(std::size_t n) const;
};

enum class Termination { Converged, MaxIterations, NumericalBreakdown };

std::string_view to_string(Termination t) noexcept;

struct SolveReport {
  std::string method;
  std::size_t iterations = 0;
  /// history[0] is the residual of x0, history[k] the residual after step k.
  std::vector<double> residual_history;
  Vector final_x;
  double wall_time_seconds = 0.0;
  Termination termination = Termination::MaxIterations;
  /// Filled only with SolverConfig::keep_iterates; iterates[0] is x0.
  std::vector<Vector> iterates;

  double final_residual() const noexcept;
};

}  // namespace gave
