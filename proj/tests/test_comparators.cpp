#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gave/comparators.hpp"
#include "gave/errors.hpp"
#include "gave/ggs.hpp"
#include "gave/linalg.hpp"
#include "test_util.hpp"

using namespace gave;
using gave::test::max_abs_diff;

namespace {

// Plain dense helpers built entry by entry, independent of the library splits.
using Dense = std::vector<std::vector<double>>;

Dense to_dense(const Matrix& a) {
  Dense d(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[i][j] = a(i, j);
  return d;
}

Matrix from_dense(const Dense& d) {
  std::vector<double> flat;
  for (const auto& row : d) flat.insert(flat.end(), row.begin(), row.end());
  return Matrix(d.size(), d.size(), std::move(flat));
}

Vector dense_apply(const Dense& a, const Vector& x) {
  Vector y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

Vector vabs(const Vector& x) {
  Vector y(x);
  for (double& v : y) v = std::abs(v);
  return y;
}

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

Vector add(const Vector& a, const Vector& b, double s = 1.0) {
  Vector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += s * b[i];
  return c;
}

// Lower part weighted by `lw`, diagonal by `dw`, upper by `uw` (entries of A itself).
Dense parts(const Dense& a, double dw, double lw, double uw) {
  Dense r(a.size(), std::vector<double>(a.size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      r[i][j] = a[i][j] * (i == j ? dw : (j < i ? lw : uw));
  return r;
}

Vector one_step(GaveMethod method, const GaveProblem& p, SolverConfig cfg) {
  cfg.max_iter = 1;
  cfg.tol = 1e-300;
  cfg.keep_iterates = true;
  const SolveReport r = solve_gave(method, p, cfg);
  REQUIRE(r.iterates.size() >= 2);
  return r.iterates[1];
}

SolverConfig start_at(const Vector& x0) {
  SolverConfig cfg;
  cfg.x0 = x0;
  return cfg;
}

}  // namespace

TEST_CASE("method names round trip") {
  for (GaveMethod m : {GaveMethod::Ggs, GaveMethod::Picard, GaveMethod::Mn, GaveMethod::Gn,
                       GaveMethod::Ssmn, GaveMethod::Mnms, GaveMethod::Gnms, GaveMethod::Rms,
                       GaveMethod::Fpi}) {
    CHECK(parse_gave_method(to_string(m)) == m);
  }
  CHECK_FALSE(parse_gave_method("newton").has_value());
  CHECK(uses_tau(GaveMethod::Gnms));
  CHECK(uses_tau(GaveMethod::Rms));
  CHECK(uses_tau(GaveMethod::Fpi));
  CHECK_FALSE(uses_tau(GaveMethod::Ggs));
  CHECK_FALSE(uses_tau(GaveMethod::Mn));
}

TEST_CASE("diagonal problem examples") {
  // A = 2I, B = I, b = e: the solution is e.
  const GaveProblem p(2.0 * Matrix::identity(3), Matrix::identity(3), Vector(3, 1.0));
  SolverConfig cfg;
  cfg.tol = 1e-10;
  cfg.max_iter = 200;
  for (GaveMethod m : {GaveMethod::Picard, GaveMethod::Mn, GaveMethod::Gn, GaveMethod::Ssmn,
                       GaveMethod::Mnms, GaveMethod::Gnms, GaveMethod::Rms, GaveMethod::Fpi}) {
    CAPTURE(to_string(m));
    const SolveReport r = solve_gave(m, p, cfg);
    CHECK(r.termination == Termination::Converged);
    CHECK(max_abs_diff(r.final_x, Vector(3, 1.0)) <= 1e-8);
    CHECK(r.residual_history.size() == r.iterations + 1);
    CHECK(r.method == to_string(m));
  }
  // Picard from 0: x1 = b / 2, then 3/4, ... converging geometrically.
  const Vector x1 = one_step(GaveMethod::Picard, p, SolverConfig{});
  CHECK(x1 == Vector(3, 0.5));
  // GN from a positive start lands on the solution in one step.
  CHECK(max_abs_diff(one_step(GaveMethod::Gn, p, start_at(Vector(3, 5.0))), Vector(3, 1.0)) <=
        1e-15);
}

TEST_CASE("single steps match independent dense formulas") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const GaveProblem p = gave::test::random_gave(rng, n, 1.2);
    const Dense a = to_dense(p.a());
    const Dense b = to_dense(p.b_mat());
    const Vector& rhs = p.rhs();
    Vector x0 = gave::test::random_vector(rng, n, -2.0, 2.0);
    x0[0] = 0.0;  // exercise sign(0) = 0
    const Vector ax = vabs(x0);
    SolverConfig cfg = start_at(x0);
    const double scale = 0.5;
    cfg.omega.scale = scale;
    Dense om(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) om[i][i] = scale * a[i][i];
    const Matrix omega = from_dense(om);

    // Picard
    const Vector pic = solve_linear(p.a(), add(dense_apply(b, ax), rhs));
    CHECK(max_abs_diff(one_step(GaveMethod::Picard, p, cfg), pic) <= 1e-12);

    // MN
    const Vector mn = solve_linear(p.a() + omega, add(add(dense_apply(om, x0), dense_apply(b, ax)), rhs));
    CHECK(max_abs_diff(one_step(GaveMethod::Mn, p, cfg), mn) <= 1e-12);

    // GN
    Dense jac = a;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) jac[i][j] -= b[i][j] * sgn(x0[j]);
    const Vector gn = solve_linear(from_dense(jac), rhs);
    CHECK(max_abs_diff(one_step(GaveMethod::Gn, p, cfg), gn) <= 1e-12);

    // SSMN
    Vector ssmn_rhs = add(dense_apply(om, x0), dense_apply(a, x0), -1.0);
    ssmn_rhs = add(ssmn_rhs, dense_apply(b, ax), 2.0);
    ssmn_rhs = add(ssmn_rhs, rhs, 2.0);
    const Vector ssmn = solve_linear(p.a() + omega, ssmn_rhs);
    CHECK(max_abs_diff(one_step(GaveMethod::Ssmn, p, cfg), ssmn) <= 1e-12);

    // With A = D - L - U: M = D - 3/4 L means weights (1, 3/4, 0) on A's entries,
    // N = 1/4 L + U means weights (0, -1/4, -1).
    const Dense m1 = parts(a, 1.0, 0.75, 0.0);
    const Dense n1 = parts(a, 0.0, -0.25, -1.0);
    const Dense m2 = parts(b, 1.0, 0.25, 0.0);
    const Dense n2 = parts(b, 0.0, -0.75, -1.0);

    // MNMS
    Dense sys(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sys[i][j] = om[i][j] + m1[i][j] - m2[i][j] * sgn(x0[j]);
    const Vector mnms_rhs = add(add(add(dense_apply(om, x0), dense_apply(n1, x0)), dense_apply(n2, ax), -1.0), rhs);
    const Vector mnms = solve_linear(from_dense(sys), mnms_rhs);
    CHECK(max_abs_diff(one_step(GaveMethod::Mnms, p, cfg), mnms) <= 1e-12);

    // RMS with y0 = b and tau = 0.7
    cfg.tau = 0.7;
    const Vector y0 = rhs;
    const Vector rms = solve_linear(from_dense(m1), add(add(dense_apply(n1, x0), dense_apply(b, y0)), rhs));
    CHECK(max_abs_diff(one_step(GaveMethod::Rms, p, cfg), rms) <= 1e-12);

    // FPI
    const Vector fpi = solve_linear(p.a(), add(dense_apply(b, y0), rhs));
    CHECK(max_abs_diff(one_step(GaveMethod::Fpi, p, cfg), fpi) <= 1e-12);

    // GNMS with q1 = 3, q2 = 0.25
    cfg.q1 = 3.0;
    cfg.q2 = 0.25;
    Vector y1(n);
    for (std::size_t i = 0; i < n; ++i)
      y1[i] = (1.0 - cfg.tau) * y0[i] + cfg.tau * (cfg.q2 * y0[i] + ax[i]) / cfg.q1;
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = cfg.q1 * y1[i] - cfg.q2 * y0[i];
    const Vector gnms = solve_linear(from_dense(m1), add(add(dense_apply(n1, x0), dense_apply(b, g)), rhs));
    CHECK(max_abs_diff(one_step(GaveMethod::Gnms, p, cfg), gnms) <= 1e-12);
  }
}

TEST_CASE("MN with zero Omega is Picard") {
  std::mt19937_64 rng(52);
  const GaveProblem p = gave::test::random_gave(rng, 10, 1.3);
  SolverConfig cfg;
  cfg.tol = 1e-12;
  cfg.omega.diagonal = Vector(10, 0.0);
  const SolveReport mn = solve_mn(p, cfg);
  const SolveReport pic = solve_picard(p, cfg);
  CHECK(mn.iterations == pic.iterations);
  CHECK(max_abs_diff(mn.final_x, pic.final_x) <= 1e-14);
  cfg.omega.diagonal.reset();
  cfg.omega.scale = 0.0;
  CHECK(solve_mn(p, cfg).iterations == pic.iterations);
}

TEST_CASE("FPI and RMS with tau = 1 and y0 = |x0| reduce to one-sequence iterations") {
  std::mt19937_64 rng(53);
  const GaveProblem p = gave::test::random_gave(rng, 9, 1.4);
  SolverConfig cfg;
  cfg.tol = 1e-11;
  cfg.tau = 1.0;
  cfg.y0 = Y0Rule::AbsX0;
  cfg.keep_iterates = true;
  const SolveReport fpi = solve_fpi(p, cfg);
  const SolveReport pic = solve_picard(p, cfg);
  REQUIRE(fpi.iterates.size() == pic.iterates.size());
  for (std::size_t k = 0; k < fpi.iterates.size(); ++k) {
    CHECK(max_abs_diff(fpi.iterates[k], pic.iterates[k]) <= 1e-13);
  }
}

TEST_CASE("comparators agree with GGS on the solution") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 10; ++t) {
    const GaveProblem p = gave::test::random_gave(rng, 25, 1.5);
    SolverConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_iter = 500;
    const SolveReport ref = solve_ggs(p, cfg);
    REQUIRE(ref.termination == Termination::Converged);
    for (GaveMethod m : {GaveMethod::Picard, GaveMethod::Mn, GaveMethod::Gn, GaveMethod::Ssmn,
                         GaveMethod::Mnms, GaveMethod::Gnms, GaveMethod::Rms, GaveMethod::Fpi}) {
      CAPTURE(to_string(m));
      const SolveReport r = solve_gave(m, p, cfg);
      CHECK(r.termination == Termination::Converged);
      CHECK(max_abs_diff(r.final_x, ref.final_x) <= 1e-9 * (1.0 + inf_norm(ref.final_x)));
    }
  }
}

TEST_CASE("converged solutions are fixed points") {
  std::mt19937_64 rng(55);
  const GaveProblem p = gave::test::random_gave(rng, 12, 1.2);
  SolverConfig cfg;
  cfg.tol = 1e-14;
  cfg.max_iter = 1000;
  const Vector x = solve_ggs(p, cfg).final_x;
  SolverConfig at = start_at(x);
  at.y0 = Y0Rule::AbsX0;
  for (GaveMethod m : {GaveMethod::Picard, GaveMethod::Mn, GaveMethod::Gn, GaveMethod::Ssmn,
                       GaveMethod::Mnms, GaveMethod::Gnms, GaveMethod::Rms, GaveMethod::Fpi}) {
    CAPTURE(to_string(m));
    CHECK(max_abs_diff(one_step(m, p, at), x) <= 1e-11);
  }
}

TEST_CASE("comparator errors") {
  const GaveProblem singular(Matrix::from_rows({{1, 1}, {1, 1}}), Matrix(2, 2), {1.0, 1.0});
  CHECK_THROWS_AS(solve_picard(singular, SolverConfig{}), SingularMatrixError);
  // GN with a singular Jacobian stops with breakdown.
  const GaveProblem jac(Matrix::from_rows({{1}}), Matrix::from_rows({{1}}), {1.0});
  SolverConfig cfg;
  cfg.x0 = Vector{2.0};
  CHECK(solve_gn(jac, cfg).termination == Termination::NumericalBreakdown);
  const GaveProblem p(2.0 * Matrix::identity(2), Matrix::identity(2), {1.0, 1.0});
  SolverConfig bad;
  bad.tau = 0.0;
  CHECK_THROWS_AS(solve_rms(p, bad), ConfigError);
  bad.tau = 2.5;
  CHECK_THROWS_AS(solve_gnms(p, bad), ConfigError);
  CHECK_THROWS_AS(solve_fpi(p, bad), ConfigError);
  // Methods without tau do not look at it.
  CHECK(solve_mn(p, bad).termination == Termination::Converged);
}

TEST_CASE("sweep_optimal_tau picks the smallest fastest tau") {
  std::mt19937_64 rng(56);
  const GaveProblem p = gave::test::random_gave(rng, 20, 1.2);
  SolverConfig cfg;
  cfg.tol = 1e-10;
  cfg.max_iter = 300;
  const std::vector<double> grid{-1.0, 0.0, 0.4, 0.8, 1.0, 1.2, 3.0};
  const TauSweepResult r = sweep_optimal_tau(GaveMethod::Rms, p, cfg, grid);
  REQUIRE(r.trials.size() == grid.size());
  CHECK(r.trials[0].skipped);
  CHECK(r.trials[1].skipped);
  CHECK(r.trials[6].skipped);
  std::size_t best = 1000000;
  double best_tau = 0.0;
  for (const TauTrial& t : r.trials) {
    if (t.skipped || t.termination != Termination::Converged) continue;
    SolverConfig c = cfg;
    c.tau = t.tau;
    CHECK(solve_rms(p, c).iterations == t.iterations);
    if (t.iterations < best) {
      best = t.iterations;
      best_tau = t.tau;
    }
  }
  CHECK(r.tau_opt == best_tau);
  CHECK(r.report.iterations == best);
  CHECK(r.sweep_seconds >= 0.0);

  const std::vector<double> empty;
  CHECK_THROWS_AS(sweep_optimal_tau(GaveMethod::Rms, p, cfg, empty), ConfigError);
  const std::vector<double> none{0.0, 5.0};
  CHECK_THROWS_AS(sweep_optimal_tau(GaveMethod::Fpi, p, cfg, none), ConfigError);
  CHECK_THROWS_AS(sweep_optimal_tau(GaveMethod::Mn, p, cfg, grid), ConfigError);

  // With B = 0 FPI finishes in one step for every tau, so the smallest tau wins the tie.
  const GaveProblem linear(2.0 * Matrix::identity(3), Matrix(3, 3), Vector(3, 1.0));
  const std::vector<double> ties{1.5, 0.5, 1.0};
  const TauSweepResult t = sweep_optimal_tau(GaveMethod::Fpi, linear, cfg, ties);
  CHECK(t.tau_opt == 0.5);
  CHECK(t.report.iterations == 1);
}
