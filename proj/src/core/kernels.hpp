#pragma once

#include <string>
#include <utility>

namespace hawkes {

enum class ShapeFamily { LogNormal, PowerLaw };

// Shape of the influence a single subtitle exerts on the chat, as a function
// of elapsed time in minutes. Log-normal is the default (steep rise, fat
// decay); the offset power law is the robustness alternative.
struct ShapeConfig {
  ShapeFamily family = ShapeFamily::LogNormal;
  // log-normal: location/scale in log-minutes
  double mu = 0.0;
  double sigma = 1.0;
  // power law: 1/(dt + eps)^c
  double c = 2.5;
  double eps = 1.0 / 60.0;

  static ShapeConfig lognormal(double mu, double sigma);
  static ShapeConfig powerlaw(double c, double eps);
  // Log-normal solved from the peak/median constraints, default peak 2 s and
  // median 10 s expressed in minutes.
  static ShapeConfig default_lognormal();
};

// Exponential chat-to-chat kernel phi(dt) = (alpha/gamma) exp(-dt/gamma).
// alpha is the branching weight (expected offspring count), gamma the decay
// time in minutes, shared across source labels for a fixed target.
struct ExpKernelParams {
  double alpha = 0.0;
  double gamma = 1.0;
};

// Solve (mu, sigma) of a log-normal from its mode and median:
// exp(mu) = median_time, exp(mu - sigma^2) = peak_time. Both inputs in the
// same time unit; sigma is unit-invariant, mu shifts with the unit.
std::pair<double, double> solve_lognormal_params(double peak_time, double median_time);

// Log-normal density in elapsed time; 0 for dt <= 0.
double lognormal_shape(double dt, const ShapeConfig& cfg);

// Standard-normal CDF of (ln dt - mu)/sigma; 0 for dt <= 0. This is the
// closed form of the integral the power-law path gets from shape_cumulative.
double lognormal_cdf(double dt, const ShapeConfig& cfg);

// Offset power law (dt + eps)^-c for dt > 0, else 0.
double powerlaw_shape(double dt, const ShapeConfig& cfg);

// Dispatch on the configured family.
double shape_value(double dt, const ShapeConfig& cfg);

// Integral of shape_value over (0, dt]. Log-normal: normal CDF. Power law:
// closed form (eps^(1-c) - (dt+eps)^(1-c))/(c-1); the offset makes the
// singularity integrable so no quadrature is needed.
double shape_cumulative(double dt, const ShapeConfig& cfg);

// Supremum of shape_value over the elapsed-time interval (dt_lo, dt_hi].
// Both families are unimodal, so this is the mode value when the mode falls
// inside, otherwise an endpoint value. Used by the thinning bound.
double shape_max_on_interval(double dt_lo, double dt_hi, const ShapeConfig& cfg);

double exp_kernel(double dt, const ExpKernelParams& params);

std::string shape_family_name(ShapeFamily family);
ShapeFamily shape_family_from_name(const std::string& name);

}  // namespace hawkes
