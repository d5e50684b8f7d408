#include "gave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

namespace {

constexpr double kDedupTol = 1e-10;

// Rounding can leave an exact zero component as a tiny value of the wrong
// sign; allow a relative slack before rejecting the branch.
bool sign_consistent(const Vector& x, const Vector& s) {
  const double slack = 1e-12 * std::max(1.0, inf_norm(x));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (s[i] * x[i] < -slack) return false;
  }
  return true;
}

}  // namespace

std::vector<Vector> oracle_sign_enumeration(const GaveProblem& problem) {
  const std::size_t n = problem.size();
  if (n > 20) throw PreconditionError("sign enumeration is limited to n <= 20");
  std::vector<Vector> found;
  Vector s(n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U ? 1.0 : -1.0;
    Vector x;
    try {
      x = solve_linear(problem.a() - scale_columns(problem.b_mat(), s), problem.rhs());
    } catch (const SingularMatrixError&) {
      continue;
    }
    if (!all_finite(x) || !sign_consistent(x, s)) continue;
    bool duplicate = false;
    for (const auto& y : found) {
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(x[i] - y[i]));
      if (diff <= kDedupTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(std::move(x));
  }
  return found;
}

}  // namespace gave
