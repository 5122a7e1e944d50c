#include "core/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace hawkes {

ShapeConfig ShapeConfig::lognormal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("log-normal sigma must be > 0");
  ShapeConfig cfg;
  cfg.family = ShapeFamily::LogNormal;
  cfg.mu = mu;
  cfg.sigma = sigma;
  return cfg;
}

ShapeConfig ShapeConfig::powerlaw(double c, double eps) {
  if (!(c > 1.0)) throw InvalidArgument("power-law exponent must be > 1");
  if (!(eps > 0.0)) throw InvalidArgument("power-law offset must be > 0");
  ShapeConfig cfg;
  cfg.family = ShapeFamily::PowerLaw;
  cfg.c = c;
  cfg.eps = eps;
  return cfg;
}

ShapeConfig ShapeConfig::default_lognormal() {
  const auto [mu, sigma] = solve_lognormal_params(2.0 / 60.0, 10.0 / 60.0);
  return lognormal(mu, sigma);
}

std::pair<double, double> solve_lognormal_params(double peak_time, double median_time) {
  if (!(peak_time > 0.0)) throw InvalidArgument("peak time must be > 0");
  if (!(peak_time < median_time)) {
    throw InvalidArgument("peak time must be strictly below the median time");
  }
  // exp(mu) = median and exp(mu - sigma^2) = peak give mu = ln(median),
  // sigma^2 = ln(median/peak).
  const double mu = std::log(median_time);
  const double sigma = std::sqrt(std::log(median_time / peak_time));
  return {mu, sigma};
}

double lognormal_shape(double dt, const ShapeConfig& cfg) {
  if (dt <= 0.0) return 0.0;
  const double z = (std::log(dt) - cfg.mu) / cfg.sigma;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * cfg.sigma * dt);
}

double lognormal_cdf(double dt, const ShapeConfig& cfg) {
  if (dt <= 0.0) return 0.0;
  return norm_cdf((std::log(dt) - cfg.mu) / cfg.sigma);
}

double powerlaw_shape(double dt, const ShapeConfig& cfg) {
  if (dt <= 0.0) return 0.0;
  return std::pow(dt + cfg.eps, -cfg.c);
}

double shape_value(double dt, const ShapeConfig& cfg) {
  return cfg.family == ShapeFamily::LogNormal ? lognormal_shape(dt, cfg)
                                              : powerlaw_shape(dt, cfg);
}

double shape_cumulative(double dt, const ShapeConfig& cfg) {
  if (dt <= 0.0) return 0.0;
  if (cfg.family == ShapeFamily::LogNormal) return lognormal_cdf(dt, cfg);
  const double cm1 = cfg.c - 1.0;
  return (std::pow(cfg.eps, -cm1) - std::pow(dt + cfg.eps, -cm1)) / cm1;
}

double shape_max_on_interval(double dt_lo, double dt_hi, const ShapeConfig& cfg) {
  if (dt_hi <= 0.0 || dt_hi <= dt_lo) return 0.0;
  if (cfg.family == ShapeFamily::PowerLaw) {
    // Strictly decreasing: sup over (dt_lo, dt_hi] sits at the left edge.
    if (dt_lo <= 0.0) return std::pow(cfg.eps, -cfg.c);
    return powerlaw_shape(dt_lo, cfg);
  }
  const double mode = std::exp(cfg.mu - cfg.sigma * cfg.sigma);
  if (dt_lo < mode && mode <= dt_hi) return lognormal_shape(mode, cfg);
  if (mode <= dt_lo) return lognormal_shape(dt_lo, cfg);  // decreasing branch
  return lognormal_shape(dt_hi, cfg);                     // increasing branch
}

double exp_kernel(double dt, const ExpKernelParams& params) {
  if (dt < 0.0) return 0.0;
  return params.alpha / params.gamma * std::exp(-dt / params.gamma);
}

std::string shape_family_name(ShapeFamily family) {
  return family == ShapeFamily::LogNormal ? "lognormal" : "powerlaw";
}

ShapeFamily shape_family_from_name(const std::string& name) {
  if (name == "lognormal") return ShapeFamily::LogNormal;
  if (name == "powerlaw") return ShapeFamily::PowerLaw;
  throw InvalidArgument("unknown shape family: " + name);
}

}  // namespace hawkes
