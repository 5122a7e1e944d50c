#include "core/numeric.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace hawkes {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double rel_tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  const double scale = std::max({std::abs(left + right), std::abs(whole), 1e-300});
  if (depth <= 0 || std::abs(delta) <= 15.0 * rel_tol * scale) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, rel_tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, rel_tol, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a,
                                  double b, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, rel_tol, max_depth);
}

double median_sorted(const std::vector<double>& sorted) {
  if (sorted.empty()) throw InvalidArgument("median of empty vector");
  const size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double quantile_linear_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of empty vector");
  if (q < 0.0 || q > 1.0) throw InvalidArgument("quantile fraction outside [0, 1]");
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace hawkes
