#pragma once

#include <optional>

#include "gave/problem.hpp"

namespace gave {

/// Sufficient condition for convergence of the GGS sweep from any x0.
///
/// With T = (D_A - L_A)^{-1}, the three norms are ||T U_A||, ||T U_B|| and
/// ||T (D_B + |L_B|)|| (infinity norm). `holds` requires D_A > |D_B|, strict
/// row diagonal dominance of D_A - |L_A| - D_B - |L_B|, and
/// ||T U_A|| + ||T U_B|| < 1 - ||T (D_B + |L_B|)||.
struct Theorem31Check {
  bool holds = false;
  /// Sum of the three norms.
  double inf_norm_value = 0.0;
  bool dominance_holds = false;
  bool diagonal_holds = false;
  double norm_upper_a = 0.0;
  double norm_upper_b = 0.0;
  double norm_lower_b = 0.0;
};

/// Throws SingularMatrixError if D_A has a zero entry.
Theorem31Check check_theorem31(const GaveProblem& problem);

/// ||(D_A - L_A)^{-1} R||_inf for R = U_A, U_B or D_B + |L_B|.
enum class Theorem31Term { UpperA, UpperB, DiagLowerB };
double theorem31_norm(const GaveProblem& problem, Theorem31Term term);

/// D_A > |D_B| and <A> - |B| is an M-matrix. Singular cases give false.
/// `tol` defaults to default_m_matrix_tol of <A> - |B|.
bool check_theorem32(const GaveProblem& problem, std::optional<double> tol = std::nullopt);

}  // namespace gave
