#include "gave/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave {

namespace {

// Entry (i, j) of the right factor R for the requested term.
double term_entry(const GaveProblem& p, Theorem31Term term, std::size_t i, std::size_t j) {
  switch (term) {
    case Theorem31Term::UpperA: return j > i ? -p.a()(i, j) : 0.0;
    case Theorem31Term::UpperB: return j > i ? -p.b_mat()(i, j) : 0.0;
    case Theorem31Term::DiagLowerB:
      if (j == i) return p.b_mat()(i, i);
      return j < i ? std::abs(p.b_mat()(i, j)) : 0.0;
  }
  return 0.0;
}

const Matrix& term_source(const GaveProblem& p, Theorem31Term term) {
  return term == Theorem31Term::UpperA ? p.a() : p.b_mat();
}

// Stored columns of row i of the term's R.
std::pair<std::size_t, std::size_t> term_row_range(const GaveProblem& p, Theorem31Term term,
                                                  std::size_t i) {
  const Matrix& src = term_source(p, term);
  if (term == Theorem31Term::DiagLowerB) {
    return {src.row_begin(i), std::min(src.row_end(i), i + 1)};
  }
  return {std::max(src.row_begin(i), i + 1), std::max(src.row_end(i), i + 1)};
}

// (D_A - L_A)^{-1} >= 0 entrywise: positive diagonal and nonpositive strict lower part.
bool lower_inverse_nonnegative(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!(a(i, i) > 0.0)) return false;
    const auto r = a.row(i);
    const std::size_t begin = a.row_begin(i);
    for (std::size_t j = begin; j < std::min(i, a.row_end(i)); ++j) {
      if (r[j - begin] > 0.0) return false;
    }
  }
  return true;
}

// Per-column sign flags of R: bit 0 set for a positive entry, bit 1 for a negative one.
std::vector<unsigned char> column_signs(const GaveProblem& p, Theorem31Term term) {
  std::vector<unsigned char> flags(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto [lo, hi] = term_row_range(p, term, i);
    for (std::size_t j = lo; j < hi; ++j) {
      const double v = term_entry(p, term, i, j);
      if (v > 0.0) flags[j] |= 1;
      if (v < 0.0) flags[j] |= 2;
    }
  }
  return flags;
}

}  // namespace

double theorem31_norm(const GaveProblem& problem, Theorem31Term term) {
  const Matrix& a = problem.a();
  const std::size_t n = problem.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0.0) throw SingularMatrixError("D_A has a zero entry at row " + std::to_string(i));
  }

  // With T = (D_A - L_A)^{-1} >= 0, a column r_j of R with one sign gives
  // |T r_j| = T |r_j|, so all such columns share one forward substitution.
  // Mixed-sign columns (and every column when T has mixed signs) get their own.
  const bool t_nonneg = lower_inverse_nonnegative(a);
  const std::vector<unsigned char> signs = column_signs(problem, term);
  auto shared = [&](std::size_t j) { return t_nonneg && signs[j] != 3; };

  Vector row_abs(n, 0.0);
  {
    Vector definite(n, 0.0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = term_row_range(problem, term, i);
      for (std::size_t j = lo; j < hi; ++j) {
        if (!shared(j)) continue;
        definite[i] += std::abs(term_entry(problem, term, i, j));
        any = true;
      }
    }
    if (any) row_abs = solve_lower_part(a, definite);
  }

  const Matrix& src = term_source(problem, term);
  Vector y(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (signs[j] == 0 || shared(j)) continue;
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (term == Theorem31Term::DiagLowerB) {
      lo = j;
      hi = std::min(n, j + src.lower_bandwidth() + 1);
    } else {
      lo = j > src.upper_bandwidth() ? j - src.upper_bandwidth() : 0;
      hi = j;
    }
    std::size_t first = n;
    for (std::size_t i = lo; i < hi; ++i) {
      if (term_entry(problem, term, i, j) != 0.0) {
        first = i;
        break;
      }
    }
    if (first == n) continue;
    for (std::size_t i = first; i < n; ++i) {
      const double rhs = i < hi ? term_entry(problem, term, i, j) : 0.0;
      const auto r = a.row(i);
      const std::size_t begin = a.row_begin(i);
      double sum = 0.0;
      for (std::size_t k = std::max(begin, first); k < std::min(i, a.row_end(i)); ++k) {
        sum += r[k - begin] * y[k];
      }
      y[i] = (rhs - sum) / a(i, i);
      row_abs[i] += std::abs(y[i]);
    }
  }
  return inf_norm(row_abs);
}

Theorem31Check check_theorem31(const GaveProblem& problem) {
  const Matrix& a = problem.a();
  const Matrix& b = problem.b_mat();
  Theorem31Check out;
  out.diagonal_holds = true;
  out.dominance_holds = true;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const double a_ii = a(i, i);
    const double b_ii = b(i, i);
    if (!(a_ii > std::abs(b_ii))) out.diagonal_holds = false;
    double off = 0.0;
    for (std::size_t j = std::min(a.row_begin(i), b.row_begin(i)); j < i; ++j) {
      off += std::abs(a(i, j)) + std::abs(b(i, j));
    }
    if (!(std::abs(a_ii - b_ii) > off)) out.dominance_holds = false;
  }
  out.norm_upper_a = theorem31_norm(problem, Theorem31Term::UpperA);
  out.norm_upper_b = theorem31_norm(problem, Theorem31Term::UpperB);
  out.norm_lower_b = theorem31_norm(problem, Theorem31Term::DiagLowerB);
  out.inf_norm_value = out.norm_upper_a + out.norm_upper_b + out.norm_lower_b;
  out.holds = out.diagonal_holds && out.dominance_holds &&
              (out.norm_upper_a + out.norm_upper_b < 1.0 - out.norm_lower_b);
  return out;
}

bool check_theorem32(const GaveProblem& problem, std::optional<double> tol) {
  for (std::size_t i = 0; i < problem.size(); ++i) {
    if (!(problem.a()(i, i) > std::abs(problem.b_mat()(i, i)))) return false;
  }
  const Matrix c = comparison_matrix(problem.a()) - abs_matrix(problem.b_mat());
  return is_m_matrix(c, tol.value_or(default_m_matrix_tol(c)));
}

}  // namespace gave
