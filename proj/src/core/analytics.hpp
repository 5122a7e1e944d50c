#pragma once

#include <string>
#include <vector>

#include "core/intensity.hpp"

namespace hawkes {

// Per-session averages of the per-event intensity decompositions, one row
// per target label. The per-event identities R_exo + R_endo = 1 and
// R_0 + R_1 = 1 hold exactly: the complements are formed by subtraction.
struct InfluenceRow {
  std::string session_id;
  size_t label = 0;
  double r_exo_mean = 0.0;
  double r_endo_mean = 0.0;
  double r0_mean = 0.0;
  double r1_mean = 0.0;
  size_t n_events = 0;
  // Raw per-event ratios, retained when requested.
  std::vector<double> r_exo;
  std::vector<double> r0;
};

struct InfluenceReport {
  std::vector<InfluenceRow> rows;  // session-major, label-minor
};

// Ratios at the session's event times under the left-limit intensity (the
// event itself is excluded, consistent with the strict-inequality rule).
InfluenceReport influence_decomposition(const HawkesParams& params,
                                        const VideoSession& session,
                                        bool keep_per_event = false);

// Same decomposition sampled on a uniform grid instead of event times;
// sensitivity-check mode.
InfluenceReport influence_decomposition_grid(const HawkesParams& params,
                                             const VideoSession& session,
                                             double grid_dt);

// Spontaneous-vs-video split of the exogenous intensity at the target
// label's event times: R_0 = mu0 / (mu0 + video term), R_1 = 1 - R_0.
// Errors when both terms vanish at an event.
struct SpontaneousRatio {
  std::vector<double> r0;
  double r0_mean = 0.0;
  double r1_mean = 0.0;
};
SpontaneousRatio spontaneous_ratio(const HawkesParams& params,
                                   const VideoSession& session, size_t target);

struct BranchingReport {
  std::vector<std::vector<double>> alpha;  // [target][source]
  std::vector<double> column_sums;         // expected offspring per source event
  double spectral_radius = 0.0;
  bool subcritical = false;
};

// Largest eigenvalue magnitude of a nonnegative square matrix by shifted
// power iteration (tolerance 1e-10, restart with a fresh start vector on
// stagnation). For nonnegative matrices this is the Perron root.
double spectral_radius(const std::vector<std::vector<double>>& matrix);

BranchingReport branching_report(const std::vector<std::vector<double>>& alpha);

struct ResidualDiagnostics {
  std::vector<double> rescaled_gaps;  // compensator increments between events
  double ks_statistic = 0.0;
  double p_value = 1.0;
  size_t n_zero_gaps = 0;  // degenerate equal-compensator pairs, reported
};

// Time-rescaling goodness of fit: compensator increments between consecutive
// target-label events are Exp(1) under a correctly specified model.
// Requires at least 10 events of the target label.
ResidualDiagnostics residual_diagnostics(const HawkesParams& params,
                                         const VideoSession& session, size_t target);

// Kolmogorov-Smirnov test of a sample against the unit exponential.
std::pair<double, double> ks_test_exp1(std::vector<double> sample);

}  // namespace hawkes
