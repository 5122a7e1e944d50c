#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/likelihood.hpp"
#include "core/optimizer.hpp"

namespace hawkes {

// Parameter bounds of the fit, per family. These are part of the model
// contract, not tuning knobs.
struct ParamBounds {
  double alpha_lo = 0.0, alpha_hi = 50.0;
  double nu_lo = 1e-6, nu_hi = 10.0;
  double gamma_lo = 0.1, gamma_hi = 20.0;
  double mu0_lo = 0.0, mu0_hi = 50.0;
};

struct FitConfig {
  ParamBounds bounds;
  int max_iterations = 500;
  double grad_tol = 1e-6;
  double value_tol = 1e-9;
  int n_starts = 3;
  double jitter_factor = 2.0;  // log-uniform multiplicative jitter on restarts
  int n_replicas = 10;         // bootstrap fits
  double frac = 0.6;           // fraction of sessions per replica (no replacement)
  uint64_t seed = 42;
  int threads = 0;  // <= 0: hardware count
};

// Outcome of one per-label optimization.
struct EmotionFit {
  EmotionParams params;
  double loglik = 0.0;
  OptimStatus status = OptimStatus::Converged;
  bool converged = false;
  int iterations = 0;
  double grad_inf_norm = 0.0;
  size_t n_events = 0;
  std::string error;  // nonempty when the label could not be fitted
  // Objective profile over gamma around the optimum, other parameters held
  // fixed; makes the flat (sloppy) gamma direction visible in reports.
  std::vector<std::pair<double, double>> gamma_profile;
};

struct ReplicaFit {
  std::vector<size_t> session_indices;   // ascending, into the fitted collection
  std::vector<EmotionFit> per_emotion;
};

// Bootstrap aggregate. `params` holds the per-parameter replica means (the
// headline estimates); `stddev` the per-parameter standard deviation across
// the replicas that produced an estimate for that label.
struct FitResult {
  HawkesParams params;
  HawkesParams stddev;
  std::vector<ReplicaFit> replicas;
  std::vector<std::vector<size_t>> replicas_used;  // [label] -> replica ids
  std::vector<std::string> status_per_emotion;
  std::vector<double> loglik_per_emotion;  // at mean params, full collection
  double loglik_total = 0.0;
  std::vector<EmotionFit> diagnostics;  // per label, evaluated at mean params
  int n_replicas = 0;
  double frac = 1.0;
  uint64_t seed = 0;
  bool any_failed = false;
};

// Maximize the summed per-session log-likelihood for one target label by
// multi-start projected L-BFGS. `data` must all share the emotion set.
EmotionFit fit_emotion(size_t target, const std::string& target_label,
                       const std::vector<const LikelihoodData*>& data,
                       const FitConfig& config);

// Fit every label independently over the full collection. Per-label failures
// are recorded, not fatal.
std::vector<EmotionFit> fit_all(const std::vector<const LikelihoodData*>& data,
                                const EmotionSet& emotions, const FitConfig& config);

// Replica subsampling fit: n_replicas independent fits, each on a
// frac-subsample of sessions drawn without replacement, aggregated into
// per-parameter means and standard deviations.
FitResult bootstrap_fit(const SessionCollection& collection, const ShapeConfig& shape,
                        const FitConfig& config);

// Scale-aware starting point used by every fit.
EmotionParams initial_params(size_t target, size_t n_labels, double events_per_minute);

}  // namespace hawkes
