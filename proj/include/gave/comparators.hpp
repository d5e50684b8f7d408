#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gave/problem.hpp"

namespace gave {

// Reference iterations for A x - B|x| = b. All share the stopping rule of
// solve_ggs (relative 2-norm residual, history[0] = residual of x0).
//
// Splittings used by the matrix-splitting methods, with A = D_A - L_A - U_A:
//   M = D_A - 3/4 L_A,  N = 1/4 L_A + U_A           (GNMS, RMS, MNMS's M1/N1)
//   M2 = D_B - 1/4 L_B, N2 = 3/4 L_B + U_B          (MNMS)
// D(x) = diag(sign(x)) with sign(0) = 0.

/// x+ = A^{-1}(B|x| + b). A is factored once; SingularMatrixError if singular.
SolveReport solve_picard(const GaveProblem& problem, const SolverConfig& config);

/// x+ = (A + Omega)^{-1}(Omega x + B|x| + b). Omega = 0 gives Picard exactly.
SolveReport solve_mn(const GaveProblem& problem, const SolverConfig& config);

/// x+ = (A - B D(x))^{-1} b, refactored every step. A singular Jacobian ends
/// the run with NumericalBreakdown.
SolveReport solve_gn(const GaveProblem& problem, const SolverConfig& config);

/// x+ = (A + Omega)^{-1}((Omega - A) x + 2B|x| + 2b).
SolveReport solve_ssmn(const GaveProblem& problem, const SolverConfig& config);

/// x+ = (Omega + M1 - M2 D(x))^{-1}(Omega x + N1 x - N2|x| + b). The system
/// matrix is lower triangular and rebuilt every step.
SolveReport solve_mnms(const GaveProblem& problem, const SolverConfig& config);

/// y+ = (1 - tau) y + tau Q1^{-1}(Q2 y + |x|),
/// x+ = M^{-1}(N x + B Q1 y+ - B Q2 y + b), with Q1 = q1 I and Q2 = q2 I.
SolveReport solve_gnms(const GaveProblem& problem, const SolverConfig& config);

/// x+ = M^{-1}(N x + B y + b), y+ = (1 - tau) y + tau |x+|.
SolveReport solve_rms(const GaveProblem& problem, const SolverConfig& config);

/// x+ = A^{-1}(B y + b), y+ = (1 - tau) y + tau |x+|.
SolveReport solve_fpi(const GaveProblem& problem, const SolverConfig& config);

enum class GaveMethod { Ggs, Picard, Mn, Gn, Ssmn, Mnms, Gnms, Rms, Fpi };

std::optional<GaveMethod> parse_gave_method(std::string_view name) noexcept;
std::string_view to_string(GaveMethod method) noexcept;

/// Methods with a tau relaxation parameter (GNMS, RMS, FPI).
bool uses_tau(GaveMethod method) noexcept;

SolveReport solve_gave(GaveMethod method, const GaveProblem& problem, const SolverConfig& config);

struct TauTrial {
  double tau = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::MaxIterations;
  bool skipped = false;
};

struct TauSweepResult {
  double tau_opt = 0.0;
  SolveReport report;
  double sweep_seconds = 0.0;
  std::vector<TauTrial> trials;
};

/// Runs `method` for every tau in `grid` and keeps the one with the fewest
/// iterations (ties go to the smallest tau; unconverged runs rank last).
/// tau outside (0, 2] is skipped. Throws ConfigError if `method` has no tau,
/// the grid is empty, or every point is skipped.
TauSweepResult sweep_optimal_tau(GaveMethod method, const GaveProblem& problem,
                                 const SolverConfig& config, std::span<const double> grid);

}  // namespace gave
