#pragma once

#include <span>

#include "gave/problem.hpp"

namespace gave {

/// Unique root of a x - b |x| = c for a > |b|: c / (a - b) when c >= 0,
/// c / (a + b) otherwise. Throws PreconditionError when a <= |b|.
double scalar_branch_solve(double a, double b, double c);

/// Throws DiagonalDominanceError at the first i with a_ii <= |b_ii|.
void require_ggs_diagonal(const GaveProblem& problem);

/// One forward Gauss-Seidel sweep for A x - B|x| = b.
///
/// Row i solves a_ii x_i - b_ii |x_i| = s_i, where s_i moves every
/// off-diagonal term to the right using the new x_j for j < i and x_prev_j
/// for j > i. The result solves the lower-triangular system
///   (D_A - L_A) x - (D_B - L_B)|x| = U_A x_prev - U_B |x_prev| + b.
Vector ggs_sweep(const GaveProblem& problem, std::span<const double> x_prev);

/// In-place variant; `x` holds x_prev on entry and x_next on return.
/// Does not re-check the diagonal condition.
void ggs_sweep_in_place(const GaveProblem& problem, std::span<double> x);

/// Iterates ggs_sweep from config.initial_x until the relative residual
/// reaches config.tol or config.max_iter sweeps are done. Only tol, max_iter,
/// x0 and keep_iterates are read from the config.
SolveReport solve_ggs(const GaveProblem& problem, const SolverConfig& config);

}  // namespace gave
