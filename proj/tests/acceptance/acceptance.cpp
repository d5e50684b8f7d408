// Acceptance gate. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (0 when everything passes).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gave/comparators.hpp"
#include "gave/conditions.hpp"
#include "gave/generators.hpp"
#include "gave/ggs.hpp"
#include "gave/lcp.hpp"
#include "gave/linalg.hpp"
#include "gave/oracle.hpp"

using namespace gave;
using gave::gen::LcpExample;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string str(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool within(std::size_t it, std::size_t target, std::size_t slack) {
  return it + slack >= target && it <= target + slack;
}

SolverConfig lcp_protocol() {
  SolverConfig c;
  c.tol = 1e-5;
  c.max_iter = 100;
  c.x0 = X0Rule::Alt10;
  return c;
}

LcpExample lcp_family(std::size_t m, double second) {
  return gen::gen_lcp_example({m, 4.0, {1.0, second}});
}

// LCP residual recomputed from scratch on the dense entries.
double lcp_residual_reference(const LcpProblem& lcp, const Vector& x, double gamma) {
  const std::size_t n = lcp.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = lcp.q()[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double mij = lcp.m_mat()(i, j);
      if (mij != 0.0) w += mij * (std::abs(x[j]) + x[j]) / gamma;
    }
    const double zi = (std::abs(x[i]) + x[i]) / gamma;
    const double v = std::min(w, zi);
    sum += v * v;
  }
  return std::sqrt(sum);
}

struct LcpRun {
  const LcpProblem* lcp;
  SolveReport report;
  double gamma;
};

std::vector<LcpRun> lcp_runs;
std::deque<LcpExample> lcp_keep;

// Random GAVE with D_A > |D_B|, off-diagonals uniform in (-1, 1) and a
// diagonal scaled by `margin` times the off-diagonal mass.
GaveProblem random_gave(std::mt19937_64& rng, std::size_t n, double margin) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::vector<double> a(n * n);
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      b[i * n + j] = 0.5 * u(rng);
      if (j != i) {
        a[i * n + j] = u(rng);
        mass += std::abs(a[i * n + j]) + std::abs(b[i * n + j]);
      }
    }
    a[i * n + i] = std::abs(b[i * n + i]) + margin * mass + 0.1 + pos(rng);
  }
  std::vector<double> rhs(n);
  for (double& v : rhs) v = 10.0 * u(rng);
  return GaveProblem(Matrix(n, n, a), Matrix(n, n, b), rhs);
}

void criterion1() {
  const SolverConfig cfg = lcp_protocol();
  const std::vector<std::pair<std::size_t, std::size_t>> ggs_targets = {
      {60, 15}, {70, 15}, {80, 16}, {90, 16}, {100, 16}};
  bool ok = true;
  std::string detail = "GGS IT";
  for (const auto& [m, target] : ggs_targets) {
    lcp_keep.push_back(lcp_family(m, 2.0));
    const LcpProblem& lcp = lcp_keep.back().problem;
    ModulusConfig mc;
    mc.theta = 0.8;
    SolveReport r = solve_ggs_lcp(lcp, mc, cfg);
    const bool row_ok = r.termination == Termination::Converged && within(r.iterations, target, 1) &&
                        r.final_residual() <= 1e-5;
    ok = ok && row_ok;
    detail += " m=" + std::to_string(m) + ":" + std::to_string(r.iterations) + "(want " +
              std::to_string(target) + "±1)";
    lcp_runs.push_back({&lcp, std::move(r), mc.gamma});
  }
  ModulusConfig mc;
  mc.theta = 0.8;
  const LcpProblem& lcp60 = lcp_keep.front().problem;
  SolveReport amgs = solve_amgs(lcp60, mc, cfg);
  const bool amgs_ok = amgs.termination == Termination::Converged &&
                       within(amgs.iterations, 13, 1) && amgs.final_residual() <= 1e-5;
  detail += "; AMGS theta=0.80 m=60 IT=" + std::to_string(amgs.iterations) + " (want 13±1), RES=" +
            str("%.3e", amgs.final_residual());
  lcp_runs.push_back({&lcp60, std::move(amgs), mc.gamma});
  report(1, "(1,2) block-tridiagonal LCP iteration counts", ok && amgs_ok, detail);
}

void criterion2() {
  const SolverConfig cfg = lcp_protocol();
  const std::vector<std::pair<std::size_t, std::size_t>> ggs_targets = {
      {60, 17}, {70, 17}, {80, 17}, {90, 17}, {100, 18}};
  bool ok = true;
  std::string detail = "GGS IT";
  const LcpProblem* lcp60 = nullptr;
  for (const auto& [m, target] : ggs_targets) {
    lcp_keep.push_back(lcp_family(m, 10.0));
    const LcpProblem& lcp = lcp_keep.back().problem;
    if (m == 60) lcp60 = &lcp;
    SolveReport r = solve_ggs_lcp(lcp, ModulusConfig{}, cfg);
    ok = ok && r.termination == Termination::Converged && within(r.iterations, target, 1) &&
         r.final_residual() <= 1e-5;
    detail += " m=" + std::to_string(m) + ":" + std::to_string(r.iterations) + "(want " +
              std::to_string(target) + "±1)";
    lcp_runs.push_back({&lcp, std::move(r), 1.0});
  }
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(k * 0.01);
  ThetaSweepResult sweep = sweep_optimal_theta(*lcp60, ModulusConfig{}, cfg, grid);
  const bool sweep_ok = sweep.theta_opt >= 0.77 - 1e-12 && sweep.theta_opt <= 0.82 + 1e-12 &&
                        sweep.report.termination == Termination::Converged &&
                        within(sweep.report.iterations, 14, 1) && sweep.sweep_seconds <= 600.0;
  detail += "; AMGS sweep 0:0.01:2 at m=60: theta_opt=" + str("%.2f", sweep.theta_opt) +
            " (want [0.77,0.82]) IT=" + std::to_string(sweep.report.iterations) +
            " (want 14±1), sweep " + str("%.1fs", sweep.sweep_seconds);
  lcp_runs.push_back({lcp60, std::move(sweep.report), 1.0});
  report(2, "(1,10) block-tridiagonal LCP iteration counts and theta sweep", ok && sweep_ok,
         detail);
}

void criterion3() {
  const LcpExample ex = lcp_family(60, 2.0);
  const SolverConfig cfg = lcp_protocol();
  std::vector<std::size_t> its;
  std::string detail = "IT";
  for (double theta : {0.1, 0.5, 1.0, 1.5, 2.0}) {
    ModulusConfig mc;
    mc.theta = theta;
    const SolveReport r = solve_ggs_lcp(ex.problem, mc, cfg);
    its.push_back(r.iterations);
    detail += " theta=" + str("%g", theta) + ":" + std::to_string(r.iterations);
  }
  const bool ok = std::all_of(its.begin(), its.end(), [&](std::size_t v) { return v == its[0]; });
  report(3, "GGS iteration count independent of theta (m=60)", ok, detail);
}

void criterion4() {
  bool ok = true;
  std::string detail;
  for (std::size_t m : {60, 70, 80, 90, 100}) {
    gen::RandomGaveSpec spec;
    spec.m = m;
    spec.seed = 42;
    const Theorem31Check c = check_theorem31(gen::gen_random_gave(spec));
    ok = ok && c.holds && c.inf_norm_value < 1.0;
    detail += "m=" + std::to_string(m) + ":" + str("%.4f", c.inf_norm_value) +
              (c.holds ? " " : "(not holding) ");
  }
  report(4, "random dense GAVE seed 42: inf_norm < 1 and norm condition holds", ok,
         "inf_norm " + detail);
}

void criterion5() {
  gen::RandomGaveSpec spec;
  spec.m = 60;
  const GaveProblem p = gen::gen_random_gave(spec);
  SolverConfig cfg;
  cfg.tol = 1e-8;
  cfg.max_iter = 100;
  const SolveReport ggs = solve_ggs(p, cfg);
  const SolveReport gn = solve_gn(p, cfg);
  const SolveReport picard = solve_picard(p, cfg);
  const SolveReport mn = solve_mn(p, cfg);
  auto conv = [](const SolveReport& r) { return r.termination == Termination::Converged; };
  const bool ok = conv(ggs) && conv(gn) && conv(picard) && conv(mn) && ggs.iterations <= 5 &&
                  gn.iterations <= 3 && picard.iterations >= 8 && picard.iterations <= 14 &&
                  mn.iterations >= 15 && mn.iterations <= 30 &&
                  ggs.wall_time_seconds <= gn.wall_time_seconds;
  const std::string detail =
      "IT GGS=" + std::to_string(ggs.iterations) + " (<=5), GN=" + std::to_string(gn.iterations) +
      " (<=3), Picard=" + std::to_string(picard.iterations) + " (8-14), MN=" +
      std::to_string(mn.iterations) + " (15-30); wall GGS=" + str("%.3fs", ggs.wall_time_seconds) +
      " GN=" + str("%.3fs", gn.wall_time_seconds);
  report(5, "method ranking on the m=60 random dense GAVE", ok, detail);
}

void criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> margin(0.3, 1.5);
  int accepted = 0;
  int tried = 0;
  int bad_count = 0;
  int bad_match = 0;
  double worst = 0.0;
  SolverConfig cfg;
  cfg.tol = 1e-13;
  cfg.max_iter = 2000;
  while (accepted < 200) {
    ++tried;
    const GaveProblem p = random_gave(rng, size(rng), margin(rng));
    if (!check_theorem32(p)) continue;
    ++accepted;
    const auto sols = oracle_sign_enumeration(p);
    if (sols.size() != 1) {
      ++bad_count;
      continue;
    }
    const SolveReport r = solve_ggs(p, cfg);
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(r.final_x[i] - sols[0][i]));
    worst = std::max(worst, diff);
    if (!(diff <= 1e-8)) ++bad_match;
  }
  const std::string detail = std::to_string(accepted) + " instances (" + std::to_string(tried) +
                             " drawn); solution count != 1: " + std::to_string(bad_count) +
                             "; mismatches: " + std::to_string(bad_match) +
                             "; worst |x_GGS - x_oracle|_inf = " + str("%.2e", worst);
  report(6, "sign-enumeration oracle agrees with GGS", bad_count == 0 && bad_match == 0, detail);
}

void criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ub(-10.0, 10.0);
  std::uniform_real_distribution<double> log_gap(-3.0, 1.0);
  std::uniform_real_distribution<double> uc(-100.0, 100.0);
  int residual_bad = 0;
  int sign_bad = 0;
  long double worst = 0.0L;
  for (int k = 0; k < 10000; ++k) {
    const double b = ub(rng);
    const double a = std::abs(b) + std::pow(10.0, log_gap(rng));
    if (!(a > std::abs(b))) continue;
    const double c = k % 100 == 0 ? 0.0 : uc(rng);
    const double x = scalar_branch_solve(a, b, c);
    const long double lx = x;
    const long double res = std::fabs(static_cast<long double>(a) * lx -
                                      static_cast<long double>(b) * std::fabs(lx) -
                                      static_cast<long double>(c));
    const long double bound = 1e-14L * std::max(1.0L, std::fabs(static_cast<long double>(c)));
    worst = std::max(worst, res / std::max(1.0L, std::fabs(static_cast<long double>(c))));
    if (!(res <= bound)) ++residual_bad;
    if ((c >= 0.0 && !(x >= 0.0)) || (c < 0.0 && !(x < 0.0))) ++sign_bad;
  }
  report(7, "scalar branch solve: substitution residual and sign consistency",
         residual_bad == 0 && sign_bad == 0,
         "10000 triples; residual violations " + std::to_string(residual_bad) +
             ", sign violations " + std::to_string(sign_bad) + ", worst scaled residual " +
             str("%.2e", static_cast<double>(worst)));
}

void criterion8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> margin(0.3, 1.5);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  const std::size_t n = 20;
  int sweeps = 0;
  int bad = 0;
  double worst = 0.0;
  int problems = 0;
  while (problems < 100) {
    const GaveProblem p = random_gave(rng, n, margin(rng));
    if (!check_theorem32(p)) continue;
    ++problems;
    Vector x(n);
    for (double& v : x) v = ux(rng);
    for (int s = 0; s < 10; ++s) {
      const Vector next = ggs_sweep(p, x);
      double r_norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double r = -p.rhs()[i];
        for (std::size_t j = 0; j < n; ++j) {
          const double aij = p.a()(i, j);
          const double bij = p.b_mat()(i, j);
          const double xj = j <= i ? next[j] : x[j];
          r += aij * xj - bij * std::abs(xj);
        }
        r_norm = std::max(r_norm, std::abs(r));
      }
      const double scale = inf_norm(p.a()) * inf_norm(next) + inf_norm(p.rhs());
      worst = std::max(worst, r_norm / scale);
      if (!(r_norm <= 1e-12 * scale)) ++bad;
      ++sweeps;
      x = next;
    }
  }
  report(8, "every GGS sweep solves its lower-triangular system", bad == 0,
         std::to_string(sweeps) + " sweeps on 100 problems; violations " + std::to_string(bad) +
             ", worst residual/scale " + str("%.2e", worst));
}

void criterion9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> margin(0.5, 2.0);
  int mismatches = 0;
  std::size_t compared = 0;
  for (int k = 0; k < 20; ++k) {
    const GaveProblem p = random_gave(rng, 12, margin(rng));
    SolverConfig cfg;
    cfg.tol = 1e-300;
    cfg.max_iter = 50;
    cfg.keep_iterates = true;
    cfg.omega.scale = 0.0;
    const SolveReport mn = solve_mn(p, cfg);
    const SolveReport picard = solve_picard(p, cfg);
    if (mn.iterates.size() != picard.iterates.size()) {
      ++mismatches;
      continue;
    }
    for (std::size_t it = 0; it < mn.iterates.size(); ++it) {
      ++compared;
      if (mn.iterates[it] != picard.iterates[it]) ++mismatches;
    }
  }
  report(9, "MN with Omega = 0 reproduces Picard bitwise", mismatches == 0,
         std::to_string(compared) + " iterates compared on 20 instances, mismatches " +
             std::to_string(mismatches));
}

void criterion10() {
  bool ok = true;
  int converged = 0;
  double worst = 0.0;
  for (const LcpRun& run : lcp_runs) {
    if (run.report.termination != Termination::Converged) continue;
    ++converged;
    const double res = lcp_residual_reference(*run.lcp, run.report.final_x, run.gamma);
    worst = std::max(worst, res);
    ok = ok && res <= 1e-5;
  }
  const LcpExample ex = lcp_family(10, 2.0);
  double z_err = 0.0;
  for (const char* which : {"ggs-lcp", "amgs"}) {
    ModulusConfig mc;
    mc.theta = 0.8;
    const SolveReport r = std::string(which) == "amgs" ? solve_amgs(ex.problem, mc, lcp_protocol())
                                                        : solve_ggs_lcp(ex.problem, mc, lcp_protocol());
    const Vector z = recover_z(r.final_x, mc.gamma);
    for (std::size_t i = 0; i < z.size(); ++i) z_err = std::max(z_err, std::abs(z[i] - ex.z_star[i]));
    ok = ok && r.termination == Termination::Converged;
  }
  ok = ok && z_err <= 1e-4 && converged > 0;
  report(10, "recovered z solves the LCP", ok,
         std::to_string(converged) + " converged runs, worst RES " + str("%.3e", worst) +
             " (<=1e-5); m=10 max |z - z*| = " + str("%.2e", z_err) + " (<=1e-4)");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8, criterion9,
                                                       criterion10};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), "criterion raised", false, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
