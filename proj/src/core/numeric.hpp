#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace hawkes {

// Standard normal CDF.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Adaptive Simpson quadrature of f over [a, b] with a relative tolerance.
// Used as the fallback integrator where no closed form exists and as the
// independent route in consistency checks against closed forms.
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a,
                                  double b, double rel_tol, int max_depth = 40);

// Median of a sorted vector (average of the middle pair for even sizes).
double median_sorted(const std::vector<double>& sorted);

// Quantile by linear interpolation of order statistics: position (n-1)*q,
// interpolated between the two neighbouring values (Hyndman-Fan type 7,
// the numpy/R default). Input must be sorted, nonempty.
double quantile_linear_sorted(const std::vector<double>& sorted, double q);

}  // namespace hawkes
