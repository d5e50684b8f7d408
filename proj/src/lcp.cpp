#include "gave/lcp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "gave/errors.hpp"
#include "gave/ggs.hpp"
#include "gave/linalg.hpp"
#include "iteration.hpp"

namespace gave {

LcpProblem::LcpProblem(Matrix m_mat, Vector q) : m_(std::move(m_mat)), q_(std::move(q)) {
  if (!m_.is_square() || m_.rows() != q_.size()) {
    throw DimensionError("LCP needs an n x n M and a length-n q; got M " +
                         std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) + ", q " +
                         std::to_string(q_.size()));
  }
  if (!all_finite(q_)) throw std::invalid_argument("q must be finite");
}

Vector ModulusConfig::omega_diagonal(const Matrix& m) const {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  Vector d;
  if (omega) {
    if (omega->size() != m.rows()) throw ConfigError("explicit Omega has wrong length");
    d = *omega;
  } else {
    d = m.diagonal_entries();
    for (double& v : d) v *= theta;
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) {
      throw ConfigError("Omega must be a positive diagonal; entry " + std::to_string(i) + " is " +
                        std::to_string(d[i]));
    }
  }
  return d;
}

GaveProblem lcp_to_gave(const LcpProblem& lcp, const ModulusConfig& cfg) {
  const Vector omega = cfg.omega_diagonal(lcp.m_mat());
  const Matrix omega_mat = Matrix::diagonal(omega);
  Vector rhs(lcp.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -cfg.gamma * lcp.q()[i];
  return GaveProblem(lcp.m_mat() + omega_mat, omega_mat - lcp.m_mat(), std::move(rhs));
}

Vector recover_z(std::span<const double> x, double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (std::abs(x[i]) + x[i]) / gamma;
  return z;
}

double lcp_residual(const LcpProblem& lcp, std::span<const double> z) {
  const Vector w = multiply(lcp.m_mat(), z);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = std::min(w[i] + lcp.q()[i], z[i]);
    sum += v * v;
  }
  return std::sqrt(sum);
}

void amgs_sweep_in_place(const LcpProblem& lcp, std::span<const double> omega, double gamma,
                         std::span<double> x) {
  const Matrix& m = lcp.m_mat();
  const std::size_t n = lcp.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = m.row(i);
    const std::size_t begin = m.row_begin(i);
    // Off-diagonal columns contribute -m_ij (x_j + |x_j|): new values for
    // j < i, old ones for j > i.
    double off = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::size_t j = begin + k;
      if (j != i) off += r[k] * (x[j] + std::abs(x[j]));
    }
    const double m_ii = m(i, i);
    const double s = (omega[i] - m_ii) * std::abs(x[i]) - off - gamma * lcp.q()[i];
    x[i] = s / (m_ii + omega[i]);
  }
}

SolveReport solve_amgs(const LcpProblem& lcp, const ModulusConfig& cfg,
                       const SolverConfig& config) {
  detail::IterationDriver driver("amgs", config);
  const Vector omega = cfg.omega_diagonal(lcp.m_mat());
  for (std::size_t i = 0; i < lcp.size(); ++i) {
    if (lcp.m_mat()(i, i) + omega[i] == 0.0) {
      throw SingularMatrixError("zero pivot in D_M - L_M + Omega at row " + std::to_string(i));
    }
  }
  return driver.run(
      config.initial_x(lcp.size()),
      [&](Vector& x) {
        amgs_sweep_in_place(lcp, omega, cfg.gamma, x);
        return true;
      },
      [&](const Vector& x) { return lcp_residual(lcp, recover_z(x, cfg.gamma)); });
}

SolveReport solve_ggs_lcp(const LcpProblem& lcp, const ModulusConfig& cfg,
                          const SolverConfig& config) {
  detail::IterationDriver driver("ggs-lcp", config);
  const GaveProblem problem = lcp_to_gave(lcp, cfg);
  require_ggs_diagonal(problem);
  return driver.run(
      config.initial_x(lcp.size()),
      [&](Vector& x) {
        ggs_sweep_in_place(problem, x);
        return true;
      },
      [&](const Vector& x) { return lcp_residual(lcp, recover_z(x, cfg.gamma)); });
}

ThetaSweepResult sweep_optimal_theta(const LcpProblem& lcp, const ModulusConfig& cfg_template,
                                     const SolverConfig& config, std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("theta grid is empty");
  const auto start = std::chrono::steady_clock::now();
  ThetaSweepResult out;
  bool have_best = false;
  std::size_t best_key = 0;
  for (double theta : grid) {
    ThetaTrial trial;
    trial.theta = theta;
    if (!(theta > 0.0)) {
      trial.skipped = true;
      out.trials.push_back(trial);
      continue;
    }
    ModulusConfig cfg = cfg_template;
    cfg.theta = theta;
    cfg.omega.reset();
    SolveReport report = solve_amgs(lcp, cfg, config);
    trial.iterations = report.iterations;
    trial.termination = report.termination;
    out.trials.push_back(trial);
    const std::size_t key = report.termination == Termination::Converged ? report.iterations
                                                                          : config.max_iter + 1;
    if (!have_best || key < best_key || (key == best_key && theta < out.theta_opt)) {
      have_best = true;
      best_key = key;
      out.theta_opt = theta;
      out.report = std::move(report);
    }
  }
  if (!have_best) throw ConfigError("every theta in the grid was skipped (theta must be > 0)");
  out.sweep_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace gave
