#pragma once

#include <vector>

#include "gave/problem.hpp"

namespace gave {

/// Every solution of A x - B|x| = b, found by brute force over sign patterns.
///
/// For each s in {-1, +1}^n solves (A - B diag(s)) x = b and keeps x when it
/// is sign-consistent (s_i x_i >= 0, so x_i = 0 fits both signs). Singular
/// branches are skipped and solutions closer than 1e-10 (infinity norm) are
/// merged. Costs 2^n dense solves; throws PreconditionError for n > 20.
std::vector<Vector> oracle_sign_enumeration(const GaveProblem& problem);

}  // namespace gave
