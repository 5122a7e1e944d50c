#pragma once

#include <cstdint>
#include <vector>

#include "core/intensity.hpp"

namespace hawkes {

// Everything the likelihood needs from one session that does not depend on
// fitted parameters: the merged chat stream across labels and the subtitle
// background evaluated at chat event times. Built once per (session, shape)
// and shared read-only across labels, restarts, and bootstrap replicas.
struct LikelihoodData {
  double duration = 0.0;
  size_t n_labels = 0;
  std::vector<std::vector<double>> chat;              // [label][event]
  std::vector<double> merged_times;                   // all chat events, sorted
  std::vector<uint32_t> merged_labels;                // label of each merged event
  std::vector<std::vector<std::vector<double>>> S_at_chat;  // [e][f][i]
  std::vector<double> M1;                             // [f]

  static LikelihoodData build(const VideoSession& session, const ShapeConfig& shape);

  size_t n_events(size_t label) const { return chat.at(label).size(); }
};

struct LoglikValue {
  double value = 0.0;
  // False when some event had nonpositive intensity; value is then a large
  // negative sentinel rather than -inf so line searches can recover.
  bool valid = true;
};

// Sentinel used in place of -inf.
inline constexpr double kLoglikFloor = -1e30;

enum class LoglikMethod {
  Recursive,  // O(N) pass over the merged stream (default)
  Naive       // O(N^2) direct double sum, kept as the independent oracle
};

// Log-likelihood of one target label over one session. The recursive and
// naive methods evaluate the same expression through different routes.
LoglikValue loglik_session(size_t target, const HawkesParams& params,
                           const VideoSession& session,
                           LoglikMethod method = LoglikMethod::Recursive);

// Core evaluator on prebuilt data; optionally fills the gradient over
// (mu0, gamma, nu[0..], alpha[0..]) in that packing order.
LoglikValue loglik_session_data(const LikelihoodData& data, size_t target,
                                const EmotionParams& p,
                                std::vector<double>* grad = nullptr);

struct LogLikReport {
  double value = 0.0;
  std::vector<double> per_session;
  size_t n_events = 0;
  double normalized = 0.0;  // value / n_events, 0 when no events
  bool valid = true;
};

LogLikReport loglik_total(size_t target, const HawkesParams& params,
                          const std::vector<VideoSession>& sessions);

// Per-target-event endogenous intensity contribution sum_f alpha[f] A_i^f /
// gamma, computed by the same O(N) recursion the likelihood uses.
std::vector<double> endo_contributions(const LikelihoodData& data, size_t target,
                                       const EmotionParams& p);

// Compensator evaluated at each target event time (integrated intensity over
// (0, t_i]), for time-rescaling residuals.
std::vector<double> compensator_at_events(const VideoSession& session, size_t target,
                                          const HawkesParams& params);

// Number of parameters in the packed gradient/optimizer layout.
inline size_t packed_size(size_t n_labels) { return 2 + 2 * n_labels; }

}  // namespace hawkes
