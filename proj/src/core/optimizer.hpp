#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hawkes {

// Box-constrained minimization by projected L-BFGS: limited-memory
// quasi-Newton directions restricted to the free variables, backtracking
// Armijo line search along the projected arc. This is the bounded
// quasi-Newton scheme behind every model fit.

struct BoxSpec {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct OptimizeOptions {
  int max_iterations = 500;
  double grad_tol = 1e-6;   // projected-gradient infinity norm
  double value_tol = 1e-9;  // value change considered stagnant
  int stagnation_window = 5;
  int memory = 10;
};

enum class OptimStatus { Converged, Stagnated, MaxIterations, LineSearchFailed };

std::string optim_status_name(OptimStatus status);

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  OptimStatus status = OptimStatus::Converged;
  bool improved = false;  // ended strictly below the starting value
};

// Objective returns f(x) and fills grad (same length as x) when non-null.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>*)>;

OptimizeResult minimize_projected_lbfgs(const Objective& objective,
                                        std::vector<double> x0, const BoxSpec& box,
                                        const OptimizeOptions& options = {});

}  // namespace hawkes
