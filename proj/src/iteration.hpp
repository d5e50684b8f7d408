#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gave/linalg.hpp"
#include "gave/problem.hpp"

namespace gave::detail {

// Shared stopping loop. The clock starts at construction so that setup work
// (factorizations) done before `run` is part of the reported wall time.
class IterationDriver {
 public:
  IterationDriver(std::string method, const SolverConfig& config)
      : config_(config), start_(std::chrono::steady_clock::now()) {
    config_.validate();
    report_.method = std::move(method);
  }

  // step(x) advances x in place and returns false on a breakdown it detected
  // itself (e.g. a singular Jacobian). residual(x) returns the stopping
  // measure.
  template <class Step, class Residual>
  SolveReport run(Vector x, Step&& step, Residual&& residual) {
    if (config_.keep_iterates) report_.iterates.push_back(x);
    double res = residual(x);
    report_.residual_history.push_back(res);
    if (!std::isfinite(res)) {
      report_.termination = Termination::NumericalBreakdown;
    } else if (res <= config_.tol) {
      report_.termination = Termination::Converged;
    } else {
      report_.termination = Termination::MaxIterations;
      while (report_.iterations < config_.max_iter) {
        const bool ok = step(x);
        ++report_.iterations;
        if (config_.keep_iterates) report_.iterates.push_back(x);
        if (!ok || !all_finite(x)) {
          report_.residual_history.push_back(std::numeric_limits<double>::quiet_NaN());
          report_.termination = Termination::NumericalBreakdown;
          break;
        }
        res = residual(x);
        report_.residual_history.push_back(res);
        if (!std::isfinite(res)) {
          report_.termination = Termination::NumericalBreakdown;
          break;
        }
        if (res <= config_.tol) {
          report_.termination = Termination::Converged;
          break;
        }
      }
    }
    report_.final_x = std::move(x);
    report_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

  const SolverConfig& config() const noexcept { return config_; }

 private:
  const SolverConfig& config_;
  std::chrono::steady_clock::time_point start_;
  SolveReport report_;
};

}  // namespace gave::detail
