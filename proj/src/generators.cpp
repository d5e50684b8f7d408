#include "gave/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gave/errors.hpp"
#include "gave/linalg.hpp"

namespace gave::gen {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LcpExample gen_lcp_example(const BlockTridiagonalSpec& spec) {
  if (spec.m < 2) throw ConfigError("block-tridiagonal generator needs m >= 2");
  if (spec.z_star_pattern.empty()) throw ConfigError("z* pattern is empty");
  const std::size_t m = spec.m;
  const std::size_t n = m * m;
  Matrix mat = Matrix::banded(n, n, m, m);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t col = i % m;
    mat.set(i, i, 4.0 + spec.mu);
    if (col > 0) mat.set(i, i - 1, -1.0);
    if (col + 1 < m) mat.set(i, i + 1, -1.0);
    if (i >= m) mat.set(i, i - m, -1.0);
    if (i + m < n) mat.set(i, i + m, -1.0);
  }
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = spec.z_star_pattern[i % spec.z_star_pattern.size()];
  Vector q = multiply(mat, z);
  for (double& v : q) v = -v;
  return LcpExample{LcpProblem(std::move(mat), std::move(q)), std::move(z)};
}

Vector reference_solution(std::size_t n) {
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
  return x;
}

GaveProblem gen_random_gave(const RandomGaveSpec& spec) {
  if (spec.m < 2) throw ConfigError("random GAVE generator needs m >= 2");
  const std::size_t n = spec.m * spec.m;
  UniformStream rng(spec.seed);
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = rng.next();
      a[i * n + j] = i == j ? spec.diag_a_offset + spec.diag_a_scale * u : -spec.offdiag_scale * u;
    }
  }
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = rng.next();
      b[i * n + j] = i == j ? spec.diag_b_scale * u : -spec.offdiag_scale * u;
    }
  }
  if (spec.make_b_singular) {
    std::copy(b.begin() + static_cast<std::ptrdiff_t>((n - 2) * n),
              b.begin() + static_cast<std::ptrdiff_t>((n - 1) * n),
              b.begin() + static_cast<std::ptrdiff_t>((n - 1) * n));
  }
  Matrix a_mat(n, n, std::move(a));
  Matrix b_mat(n, n, std::move(b));
  const Vector x_star = reference_solution(n);
  Vector rhs = multiply(a_mat, x_star);
  const Vector bx = multiply(b_mat, abs_vector(x_star));
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= bx[i];
  return GaveProblem(std::move(a_mat), std::move(b_mat), std::move(rhs));
}

std::string to_record(const BlockTridiagonalSpec& spec) {
  std::ostringstream out;
  out << "generator=block-tridiagonal m=" << spec.m << " n=" << spec.m * spec.m
      << " mu=" << fmt(spec.mu) << " z_star_pattern=";
  for (std::size_t i = 0; i < spec.z_star_pattern.size(); ++i) {
    out << (i ? "," : "") << fmt(spec.z_star_pattern[i]);
  }
  return out.str();
}

std::string to_record(const RandomGaveSpec& spec) {
  std::ostringstream out;
  out << "generator=random-gave m=" << spec.m << " n=" << spec.m * spec.m
      << " seed=" << spec.seed << " prng=" << UniformStream::name()
      << " diag_a=" << fmt(spec.diag_a_offset) << "+" << fmt(spec.diag_a_scale)
      << "u offdiag=" << fmt(spec.offdiag_scale) << " diag_b=" << fmt(spec.diag_b_scale)
      << " singular_b=" << (spec.make_b_singular ? "true" : "false")
      << " x_star=alternating(1,-1)";
  return out.str();
}

}  // namespace gave::gen
