#include "core/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "core/errors.hpp"

namespace hawkes {

namespace {

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void clamp_to_box(std::vector<double>& x, const BoxSpec& box) {
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = std::min(std::max(x[i], box.lower[i]), box.upper[i]);
  }
}

// Optimality violation for minimization over a box: components that can
// still produce descent inside the feasible set.
std::vector<double> projected_gradient(const std::vector<double>& x,
                                       const std::vector<double>& g,
                                       const BoxSpec& box) {
  std::vector<double> pg(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= box.lower[i]) {
      pg[i] = std::min(g[i], 0.0);
    } else if (x[i] >= box.upper[i]) {
      pg[i] = std::max(g[i], 0.0);
    } else {
      pg[i] = g[i];
    }
  }
  return pg;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Two-loop recursion on the gradient restricted to free variables. Without
// memory the direction is steepest descent scaled to a unit-sized first probe.
std::vector<double> lbfgs_direction(const std::deque<Pair>& memory,
                                    const std::vector<double>& g_free) {
  std::vector<double> q = g_free;
  if (memory.empty()) {
    const double scale = 1.0 / std::max(1.0, inf_norm(q));
    for (double& v : q) v *= -scale;
    return q;
  }
  std::vector<double> a(memory.size());
  for (size_t k = memory.size(); k-- > 0;) {
    a[k] = memory[k].rho * dot(memory[k].s, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] -= a[k] * memory[k].y[i];
  }
  {
    const auto& last = memory.back();
    const double yy = dot(last.y, last.y);
    const double scale = yy > 0.0 ? dot(last.s, last.y) / yy : 1.0;
    for (double& v : q) v *= scale;
  }
  for (size_t k = 0; k < memory.size(); ++k) {
    const double b = memory[k].rho * dot(memory[k].y, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] += (a[k] - b) * memory[k].s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

std::string optim_status_name(OptimStatus status) {
  switch (status) {
    case OptimStatus::Converged: return "converged";
    case OptimStatus::Stagnated: return "stagnated";
    case OptimStatus::MaxIterations: return "max_iterations";
    case OptimStatus::LineSearchFailed: return "line_search_failed";
  }
  return "unknown";
}

OptimizeResult minimize_projected_lbfgs(const Objective& objective,
                                        std::vector<double> x0, const BoxSpec& box,
                                        const OptimizeOptions& options) {
  const size_t n = x0.size();
  if (box.lower.size() != n || box.upper.size() != n) {
    throw InvalidArgument("bound vectors do not match the parameter dimension");
  }
  for (size_t i = 0; i < n; ++i) {
    if (!(box.lower[i] <= box.upper[i])) throw InvalidArgument("inverted bound");
  }
  clamp_to_box(x0, box);

  OptimizeResult result;
  std::vector<double> x = std::move(x0);
  std::vector<double> g(n, 0.0);
  double f = objective(x, &g);
  const double f_start = f;

  std::deque<Pair> memory;
  int stagnant = 0;
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-14;

  int iter = 0;
  OptimStatus status = OptimStatus::MaxIterations;
  for (; iter < options.max_iterations; ++iter) {
    const auto pg = projected_gradient(x, g, box);
    if (inf_norm(pg) < options.grad_tol) {
      status = OptimStatus::Converged;
      break;
    }

    // Freeze variables pinned at a bound whose gradient pushes outward; the
    // quasi-Newton step moves in the free subspace only.
    std::vector<bool> frozen(n, false);
    std::vector<double> g_free = g;
    for (size_t i = 0; i < n; ++i) {
      const bool at_low = x[i] <= box.lower[i] && g[i] > 0.0;
      const bool at_high = x[i] >= box.upper[i] && g[i] < 0.0;
      if (at_low || at_high) {
        frozen[i] = true;
        g_free[i] = 0.0;
      }
    }
    std::vector<double> d = lbfgs_direction(memory, g_free);
    for (size_t i = 0; i < n; ++i) {
      if (frozen[i]) d[i] = 0.0;
    }
    if (dot(d, g_free) >= 0.0) {
      // Not a descent direction (stale curvature); fall back to steepest.
      d = g_free;
      for (double& v : d) v = -v;
      memory.clear();
    }

    // Backtracking Armijo along the projected arc.
    double step = 1.0;
    std::vector<double> x_new(n);
    double f_new = f;
    bool accepted = false;
    while (step >= kMinStep) {
      for (size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      clamp_to_box(x_new, box);
      double moved = 0.0;
      double slope = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double dx = x_new[i] - x[i];
        moved += std::abs(dx);
        slope += g[i] * dx;
      }
      if (moved == 0.0) break;  // projection killed the whole step
      f_new = objective(x_new, nullptr);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * std::min(slope, 0.0)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      status = OptimStatus::LineSearchFailed;
      break;
    }

    std::vector<double> g_new(n, 0.0);
    f_new = objective(x_new, &g_new);

    Pair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s)) * std::sqrt(dot(pair.y, pair.y)) &&
        sy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > static_cast<size_t>(options.memory)) memory.pop_front();
    }

    const double change = std::abs(f - f_new);
    stagnant = change < options.value_tol ? stagnant + 1 : 0;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    if (stagnant >= options.stagnation_window) {
      status = OptimStatus::Stagnated;
      ++iter;
      break;
    }
  }

  result.x = std::move(x);
  result.value = f;
  result.grad_inf_norm = inf_norm(projected_gradient(result.x, g, box));
  result.iterations = iter;
  result.status = status;
  result.improved = f < f_start;
  // A failed line search after real progress is ordinary stagnation.
  if (status == OptimStatus::LineSearchFailed && result.improved) {
    result.status = OptimStatus::Stagnated;
  }
  return result;
}

}  // namespace hawkes
