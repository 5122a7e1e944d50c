#pragma once

#include <vector>

#include "core/event_model.hpp"
#include "core/kernels.hpp"

namespace hawkes {

// Parameters of one target label's intensity: base rate mu0, decay time
// gamma (shared across source labels), and per-source weights nu (video to
// chat) and alpha (chat to chat).
struct EmotionParams {
  double mu0 = 0.0;
  double gamma = 1.0;
  std::vector<double> nu;     // [source label]
  std::vector<double> alpha;  // [source label]
};

// Full parameter set: one EmotionParams per label plus the shared subtitle
// influence shape. alpha/nu entry [e][f] is the weight from source f onto
// target e.
struct HawkesParams {
  EmotionSet emotions;
  ShapeConfig shape;
  std::vector<EmotionParams> per_emotion;  // [target label]

  void validate() const;  // shapes consistent with the emotion set
  std::vector<std::vector<double>> alpha_matrix() const;  // [target][source]
};

// Sum of subtitle influence shapes: S(t) = sum over subtitle times tau < t of
// shape(t - tau). Subtitle times must be sorted.
double background_S(double t, const std::vector<double>& subtitle_times,
                    const ShapeConfig& shape);

// Integral of background_S over (0, t]: sum of shape_cumulative(t - tau).
double background_mass_M1(const std::vector<double>& subtitle_times, double t,
                          const ShapeConfig& shape);

// Exogenous rate mu0 + sum_f nu[f] S^f(t).
double exo_rate(double t, size_t target, const HawkesParams& params,
                const VideoSession& session);

// Full conditional intensity at t given the session history strictly before
// t: exo_rate plus the exponential-kernel sum over past chat events. Events
// at exactly t are excluded, so an event never excites itself.
double total_intensity(double t, size_t target, const HawkesParams& params,
                       const VideoSession& session);

// Integrated intensity over (0, t]: expected event count of the target label.
double compensator(size_t target, const HawkesParams& params,
                   const VideoSession& session, double t);

// Per-session values that do not depend on fitted parameters: the subtitle
// background evaluated at every chat event time and its total mass. Shared
// across fit restarts, bootstrap replicas, and target labels.
struct BackgroundCache {
  // S_at_chat[e][f][i] = S^f at the i-th chat event of label e.
  std::vector<std::vector<std::vector<double>>> S_at_chat;
  std::vector<double> M1;  // [f], integral of S^f over (0, T]
  double duration = 0.0;

  static BackgroundCache build(const VideoSession& session, const ShapeConfig& shape);
};

}  // namespace hawkes
