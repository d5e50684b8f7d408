#include "gave/comparators.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "gave/errors.hpp"
#include "gave/ggs.hpp"
#include "gave/linalg.hpp"
#include "iteration.hpp"

namespace gave {

namespace {

double sign_of(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Vector signs(std::span<const double> x) {
  Vector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = sign_of(x[i]);
  return s;
}

Matrix plus_diagonal(const Matrix& a, std::span<const double> d) {
  return a + Matrix::diagonal(d);
}

Vector initial_y(const GaveProblem& problem, const SolverConfig& config, const Vector& x0) {
  switch (config.y0) {
    case Y0Rule::Rhs: return problem.rhs();
    case Y0Rule::Zeros: return Vector(problem.size(), 0.0);
    case Y0Rule::AbsX0: return abs_vector(x0);
  }
  return problem.rhs();
}

// N x for N = 1/4 L_A + U_A = -(1/4) SL(A) - SU(A).
Vector apply_n(const Matrix& a, std::span<const double> x) {
  const Vector lower = multiply_part(a, Part::StrictLower, x);
  Vector y = multiply_part(a, Part::StrictUpper, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = -0.25 * lower[i] - y[i];
  return y;
}

// M^{-1} r for M = D_A - 3/4 L_A = D_A + 3/4 SL(A).
Vector solve_m(const Matrix& a, std::span<const double> r) { return solve_lower_part(a, r, 0.75); }

auto residual_of(const GaveProblem& problem) {
  return [&problem](const Vector& x) { return gave_residual(problem, x); };
}

void relax_y(Vector& y, std::span<const double> x, double tau) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (1.0 - tau) * y[i] + tau * std::abs(x[i]);
}

}  // namespace

SolveReport solve_picard(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("picard", config);
  const LuFactorization lu(problem.a());
  return driver.run(
      config.initial_x(problem.size()),
      [&](Vector& x) {
        Vector r = multiply(problem.b_mat(), abs_vector(x));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + problem.rhs()[i];
        x = lu.solve(r);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_mn(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("mn", config);
  const Vector omega = config.omega.build(problem.a());
  const LuFactorization lu(plus_diagonal(problem.a(), omega));
  return driver.run(
      config.initial_x(problem.size()),
      [&](Vector& x) {
        Vector r = multiply(problem.b_mat(), abs_vector(x));
        for (std::size_t i = 0; i < r.size(); ++i) {
          r[i] = (omega[i] * x[i] + r[i]) + problem.rhs()[i];
        }
        x = lu.solve(r);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_gn(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("gn", config);
  return driver.run(
      config.initial_x(problem.size()),
      [&](Vector& x) {
        try {
          const Matrix jac = problem.a() - scale_columns(problem.b_mat(), signs(x));
          x = LuFactorization(jac).solve(problem.rhs());
        } catch (const SingularMatrixError&) {
          return false;
        }
        return true;
      },
      residual_of(problem));
}

SolveReport solve_ssmn(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("ssmn", config);
  const Vector omega = config.omega.build(problem.a());
  const LuFactorization lu(plus_diagonal(problem.a(), omega));
  return driver.run(
      config.initial_x(problem.size()),
      [&](Vector& x) {
        const Vector ax = multiply(problem.a(), x);
        Vector r = multiply(problem.b_mat(), abs_vector(x));
        for (std::size_t i = 0; i < r.size(); ++i) {
          r[i] = omega[i] * x[i] - ax[i] + 2.0 * r[i] + 2.0 * problem.rhs()[i];
        }
        x = lu.solve(r);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_mnms(const GaveProblem& problem, const SolverConfig& config) {
  detail::IterationDriver driver("mnms", config);
  const Matrix& a = problem.a();
  const Matrix& b = problem.b_mat();
  const Vector omega = config.omega.build(a);
  const std::size_t n = problem.size();
  return driver.run(
      config.initial_x(n),
      [&](Vector& x) {
        const Vector ax = abs_vector(x);
        const Vector a_lower = multiply_part(a, Part::StrictLower, x);
        const Vector a_upper = multiply_part(a, Part::StrictUpper, x);
        const Vector b_lower = multiply_part(b, Part::StrictLower, ax);
        const Vector b_upper = multiply_part(b, Part::StrictUpper, ax);
        Vector r(n);
        for (std::size_t i = 0; i < n; ++i) {
          // Omega x + N1 x - N2 |x| + b
          r[i] = omega[i] * x[i] - 0.25 * a_lower[i] - a_upper[i] + 0.75 * b_lower[i] +
                 b_upper[i] + problem.rhs()[i];
        }
        // (Omega + D_A + 3/4 SL(A) - (D_B + 1/4 SL(B)) D(x)) x+ = r, by rows.
        const Vector s = signs(x);
        Vector next(n);
        for (std::size_t i = 0; i < n; ++i) {
          double sum = 0.0;
          const auto ar = a.row(i);
          const std::size_t ab = a.row_begin(i);
          for (std::size_t j = ab; j < std::min(i, a.row_end(i)); ++j) {
            sum += 0.75 * ar[j - ab] * next[j];
          }
          const auto br = b.row(i);
          const std::size_t bb = b.row_begin(i);
          for (std::size_t j = bb; j < std::min(i, b.row_end(i)); ++j) {
            sum -= 0.25 * br[j - bb] * s[j] * next[j];
          }
          const double diag = omega[i] + a(i, i) - b(i, i) * s[i];
          if (diag == 0.0) return false;
          next[i] = (r[i] - sum) / diag;
        }
        x = std::move(next);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_gnms(const GaveProblem& problem, const SolverConfig& config) {
  config.validate_tau();
  if (!(config.q1 != 0.0)) throw ConfigError("GNMS needs a nonzero Q1 scale");
  detail::IterationDriver driver("gnms", config);
  const Matrix& a = problem.a();
  const Vector x0 = config.initial_x(problem.size());
  Vector y = initial_y(problem, config, x0);
  const double tau = config.tau;
  const double q1 = config.q1;
  const double q2 = config.q2;
  return driver.run(
      x0,
      [&](Vector& x) {
        Vector y_next(y.size());
        Vector w(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
          y_next[i] = (1.0 - tau) * y[i] + tau * (q2 * y[i] + std::abs(x[i])) / q1;
          w[i] = q1 * y_next[i] - q2 * y[i];
        }
        Vector r = apply_n(a, x);
        const Vector bw = multiply(problem.b_mat(), w);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + bw[i] + problem.rhs()[i];
        x = solve_m(a, r);
        y = std::move(y_next);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_rms(const GaveProblem& problem, const SolverConfig& config) {
  config.validate_tau();
  detail::IterationDriver driver("rms", config);
  const Matrix& a = problem.a();
  const Vector x0 = config.initial_x(problem.size());
  Vector y = initial_y(problem, config, x0);
  return driver.run(
      x0,
      [&](Vector& x) {
        Vector r = apply_n(a, x);
        const Vector by = multiply(problem.b_mat(), y);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + by[i] + problem.rhs()[i];
        x = solve_m(a, r);
        relax_y(y, x, config.tau);
        return true;
      },
      residual_of(problem));
}

SolveReport solve_fpi(const GaveProblem& problem, const SolverConfig& config) {
  config.validate_tau();
  detail::IterationDriver driver("fpi", config);
  const LuFactorization lu(problem.a());
  const Vector x0 = config.initial_x(problem.size());
  Vector y = initial_y(problem, config, x0);
  return driver.run(
      x0,
      [&](Vector& x) {
        Vector r = multiply(problem.b_mat(), y);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + problem.rhs()[i];
        x = lu.solve(r);
        relax_y(y, x, config.tau);
        return true;
      },
      residual_of(problem));
}

std::optional<GaveMethod> parse_gave_method(std::string_view name) noexcept {
  if (name == "ggs") return GaveMethod::Ggs;
  if (name == "picard") return GaveMethod::Picard;
  if (name == "mn") return GaveMethod::Mn;
  if (name == "gn") return GaveMethod::Gn;
  if (name == "ssmn") return GaveMethod::Ssmn;
  if (name == "mnms") return GaveMethod::Mnms;
  if (name == "gnms") return GaveMethod::Gnms;
  if (name == "rms") return GaveMethod::Rms;
  if (name == "fpi") return GaveMethod::Fpi;
  return std::nullopt;
}

std::string_view to_string(GaveMethod method) noexcept {
  switch (method) {
    case GaveMethod::Ggs: return "ggs";
    case GaveMethod::Picard: return "picard";
    case GaveMethod::Mn: return "mn";
    case GaveMethod::Gn: return "gn";
    case GaveMethod::Ssmn: return "ssmn";
    case GaveMethod::Mnms: return "mnms";
    case GaveMethod::Gnms: return "gnms";
    case GaveMethod::Rms: return "rms";
    case GaveMethod::Fpi: return "fpi";
  }
  return "?";
}

bool uses_tau(GaveMethod method) noexcept {
  return method == GaveMethod::Gnms || method == GaveMethod::Rms || method == GaveMethod::Fpi;
}

SolveReport solve_gave(GaveMethod method, const GaveProblem& problem, const SolverConfig& config) {
  switch (method) {
    case GaveMethod::Ggs: return solve_ggs(problem, config);
    case GaveMethod::Picard: return solve_picard(problem, config);
    case GaveMethod::Mn: return solve_mn(problem, config);
    case GaveMethod::Gn: return solve_gn(problem, config);
    case GaveMethod::Ssmn: return solve_ssmn(problem, config);
    case GaveMethod::Mnms: return solve_mnms(problem, config);
    case GaveMethod::Gnms: return solve_gnms(problem, config);
    case GaveMethod::Rms: return solve_rms(problem, config);
    case GaveMethod::Fpi: return solve_fpi(problem, config);
  }
  throw ConfigError("unknown method");
}

TauSweepResult sweep_optimal_tau(GaveMethod method, const GaveProblem& problem,
                                 const SolverConfig& config, std::span<const double> grid) {
  if (!uses_tau(method)) {
    throw ConfigError("method " + std::string(to_string(method)) + " has no tau parameter");
  }
  if (grid.empty()) throw ConfigError("tau grid is empty");
  const auto start = std::chrono::steady_clock::now();
  TauSweepResult out;
  bool have_best = false;
  std::size_t best_key = 0;
  for (double tau : grid) {
    TauTrial trial;
    trial.tau = tau;
    if (!(tau > 0.0 && tau <= 2.0)) {
      trial.skipped = true;
      out.trials.push_back(trial);
      continue;
    }
    SolverConfig cfg = config;
    cfg.tau = tau;
    SolveReport report = solve_gave(method, problem, cfg);
    trial.iterations = report.iterations;
    trial.termination = report.termination;
    out.trials.push_back(trial);
    const std::size_t key = report.termination == Termination::Converged ? report.iterations
                                                                          : config.max_iter + 1;
    if (!have_best || key < best_key || (key == best_key && tau < out.tau_opt)) {
      have_best = true;
      best_key = key;
      out.tau_opt = tau;
      out.report = std::move(report);
    }
  }
  if (!have_best) throw ConfigError("every tau in the grid was skipped (tau must be in (0, 2])");
  out.sweep_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace gave
