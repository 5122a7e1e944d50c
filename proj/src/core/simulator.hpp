#pragma once

#include <cstdint>
#include <vector>

#include "core/fitter.hpp"
#include "core/intensity.hpp"
#include "core/rng.hpp"

namespace hawkes {

struct SimConfig {
  double duration = 120.0;  // minutes
  size_t n_sessions = 1;
  // Homogeneous Poisson subtitle rate per label (events/min). Ignored when
  // fixed_subtitles is nonempty, in which case every session reuses the
  // given per-label subtitle times.
  std::vector<double> subtitle_rates;
  std::vector<std::vector<double>> fixed_subtitles;
  uint64_t seed = 42;
  // Runaway guard: exceeding this many chat events in one session aborts
  // with a supercriticality diagnostic.
  size_t max_events = 1000000;
  // Length of the piecewise window over which the thinning bound is held.
  double bound_window = 0.5;
};

// Independent homogeneous Poisson streams on [0, T), one per rate entry.
std::vector<std::vector<double>> simulate_subtitles(const std::vector<double>& rates,
                                                    double duration, Rng& rng);

// Draw one session from the model by multivariate Ogata thinning. The
// dominating rate is rebuilt on every accepted event and window boundary:
// the exogenous part from per-subtitle shape maxima over the window, the
// endogenous part from its current value, which only decays between events.
VideoSession simulate_session(const HawkesParams& params, const SimConfig& config,
                              size_t session_index);

// n_sessions independent sessions; emits a warning to stderr when the
// branching matrix is supercritical.
SessionCollection simulate_collection(const HawkesParams& params,
                                      const SimConfig& config);

// Recovery tolerances for simulate-then-fit validation. Entries below the
// floors are too small to carry signal and are reported but not gated on.
struct ToleranceSpec {
  double alpha_floor = 0.1;
  double alpha_rel = 0.20;
  double alpha_abs = 0.05;
  double mu0_rel = 0.15;
  double nu_floor = 0.1;
  double nu_rel = 0.30;
  double gamma_rel = 0.50;
};

struct ParamCheck {
  std::string name;
  double truth = 0.0;
  double estimate = 0.0;
  double stddev = 0.0;
  double error_abs = 0.0;
  double error_rel = 0.0;
  bool gated = false;       // participates in the pass/fail decision
  bool within_tol = true;
  bool within_2std = true;  // truth inside estimate +- 2 std (informational)
};

struct RecoveryReport {
  FitResult fit;
  std::vector<ParamCheck> checks;
  std::vector<size_t> events_per_label;
  size_t n_sessions = 0;
  double duration = 0.0;
  bool passed = true;
};

// Simulate a corpus from known ground truth, refit it, and compare the
// estimates against the truth under the given tolerances.
RecoveryReport round_trip_validate(const HawkesParams& truth, const SimConfig& sim,
                                   const FitConfig& fit_config,
                                   const ToleranceSpec& tolerances = {});

}  // namespace hawkes
