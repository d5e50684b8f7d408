#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gave/problem.hpp"

namespace gave {

/// Find z >= 0 with w = M z + q >= 0 and z'w = 0.
class LcpProblem {
 public:
  LcpProblem(Matrix m_mat, Vector q);

  const Matrix& m_mat() const noexcept { return m_; }
  const Vector& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return q_.size(); }

 private:
  Matrix m_;
  Vector q_;
};

/// Parameters of the modulus reformulation (M + Omega) x - (Omega - M)|x| = -gamma q.
/// Omega is theta * D_M unless an explicit positive diagonal is given.
struct ModulusConfig {
  double gamma = 1.0;
  double theta = 1.0;
  std::optional<Vector> omega;

  /// Throws ConfigError unless gamma > 0 and every Omega entry is > 0.
  Vector omega_diagonal(const Matrix& m) const;
};

GaveProblem lcp_to_gave(const LcpProblem& lcp, const ModulusConfig& cfg);

/// z = (|x| + x) / gamma.
Vector recover_z(std::span<const double> x, double gamma);

/// ||min(M z + q, z)||_2 with the minimum taken componentwise.
double lcp_residual(const LcpProblem& lcp, std::span<const double> z);

/// One accelerated modulus Gauss-Seidel step, in place. Row i solves
///   (D_M - L_M + Omega) x+ = U_M x + (Omega - D_M + U_M)|x| + L_M |x+| - gamma q
/// by forward substitution; |x+_j| for j < i is already known.
void amgs_sweep_in_place(const LcpProblem& lcp, std::span<const double> omega, double gamma,
                         std::span<double> x);

/// AMGS iteration; stops on lcp_residual(recover_z(x)) <= tol. The report's
/// residual history holds LCP residuals.
SolveReport solve_amgs(const LcpProblem& lcp, const ModulusConfig& cfg,
                       const SolverConfig& config);

/// GGS on the reformulated GAVE, with the same LCP-residual stopping rule.
SolveReport solve_ggs_lcp(const LcpProblem& lcp, const ModulusConfig& cfg,
                          const SolverConfig& config);

struct ThetaTrial {
  double theta = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::MaxIterations;
  bool skipped = false;
};

struct ThetaSweepResult {
  double theta_opt = 0.0;
  SolveReport report;
  double sweep_seconds = 0.0;
  std::vector<ThetaTrial> trials;
};

/// Runs solve_amgs for every theta in `grid` and keeps the one with the fewest
/// iterations (ties go to the smallest theta; unconverged runs rank last).
/// theta <= 0 is skipped because Omega must be positive. `sweep_seconds`
/// covers every run. Throws ConfigError for an empty grid or when every
/// point is skipped.
ThetaSweepResult sweep_optimal_theta(const LcpProblem& lcp, const ModulusConfig& cfg_template,
                                     const SolverConfig& config, std::span<const double> grid);

}  // namespace gave
