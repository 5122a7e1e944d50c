#include "core/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace hawkes {

namespace {

// Walks the merged stream grouped by distinct time, maintaining for each
// source label f the decayed sums
//   A[f] = sum over f-events strictly before t of exp(-(t - t_j)/gamma)
//   D[f] = sum over f-events strictly before t of (t - t_j) exp(-(t - t_j)/gamma)
// The exponential kernel makes both exact under the update
//   A <- w (A + new events), D <- w (D + dt A), w = exp(-dt/gamma),
// which is what keeps the whole evaluation linear in the event count.
template <typename OnTargetEvent>
void walk_merged(const LikelihoodData& data, size_t target, double gamma,
                 bool need_delta_sums, OnTargetEvent&& on_target) {
  const size_t n = data.merged_times.size();
  const size_t n_labels = data.n_labels;
  std::vector<double> A(n_labels, 0.0);
  std::vector<double> D(n_labels, 0.0);
  double t_prev = n > 0 ? data.merged_times[0] : 0.0;
  size_t target_index = 0;

  size_t g = 0;
  while (g < n) {
    const double t = data.merged_times[g];
    const double dt = t - t_prev;
    if (dt > 0.0) {
      const double w = std::exp(-dt / gamma);
      for (size_t f = 0; f < n_labels; ++f) {
        if (need_delta_sums) D[f] = w * (D[f] + dt * A[f]);
        A[f] *= w;
      }
      t_prev = t;
    }
    size_t end = g;
    while (end < n && data.merged_times[end] == t) ++end;
    // Events sharing a timestamp see the same history and never excite each
    // other: hand A/D to the targets first, then absorb the whole group.
    for (size_t k = g; k < end; ++k) {
      if (data.merged_labels[k] == target) {
        on_target(target_index, A, D);
        ++target_index;
      }
    }
    for (size_t k = g; k < end; ++k) A[data.merged_labels[k]] += 1.0;
    g = end;
  }
}

void check_packed(const EmotionParams& p, size_t n_labels) {
  if (p.nu.size() != n_labels || p.alpha.size() != n_labels) {
    throw InvalidArgument("parameter vector length does not match the emotion set");
  }
  if (!(p.gamma > 0.0)) throw InvalidArgument("gamma must be > 0");
}

LoglikValue loglik_session_naive(const VideoSession& session, size_t target,
                                 const HawkesParams& params) {
  const auto& p = params.per_emotion.at(target);
  const size_t n_labels = params.emotions.size();
  const double T = session.duration;
  LoglikValue out;
  double value = 0.0;
  for (double ti : session.chat.at(target)) {
    double lambda = p.mu0;
    for (size_t f = 0; f < n_labels; ++f) {
      lambda += p.nu[f] * background_S(ti, session.subtitles.at(f), params.shape);
      for (double tj : session.chat.at(f)) {
        if (tj >= ti) break;
        lambda += p.alpha[f] / p.gamma * std::exp(-(ti - tj) / p.gamma);
      }
    }
    if (!(lambda > 0.0)) return {kLoglikFloor, false};
    value += std::log(lambda);
  }
  value -= p.mu0 * T;
  for (size_t f = 0; f < n_labels; ++f) {
    value -= p.nu[f] * background_mass_M1(session.subtitles.at(f), T, params.shape);
    for (double tj : session.chat.at(f)) {
      value += p.alpha[f] * (std::exp(-(T - tj) / p.gamma) - 1.0);
    }
  }
  out.value = value;
  return out;
}

}  // namespace

LikelihoodData LikelihoodData::build(const VideoSession& session,
                                     const ShapeConfig& shape) {
  LikelihoodData data;
  data.duration = session.duration;
  data.n_labels = session.chat.size();
  data.chat = session.chat;

  size_t total = 0;
  for (const auto& list : session.chat) total += list.size();
  std::vector<std::pair<double, uint32_t>> merged;
  merged.reserve(total);
  for (size_t f = 0; f < session.chat.size(); ++f) {
    for (double t : session.chat[f]) merged.emplace_back(t, static_cast<uint32_t>(f));
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  data.merged_times.reserve(total);
  data.merged_labels.reserve(total);
  for (const auto& [t, f] : merged) {
    data.merged_times.push_back(t);
    data.merged_labels.push_back(f);
  }

  const auto cache = BackgroundCache::build(session, shape);
  data.S_at_chat = cache.S_at_chat;
  data.M1 = cache.M1;
  return data;
}

LoglikValue loglik_session_data(const LikelihoodData& data, size_t target,
                                const EmotionParams& p, std::vector<double>* grad) {
  check_packed(p, data.n_labels);
  const size_t n_labels = data.n_labels;
  const double T = data.duration;
  const double gamma = p.gamma;
  const auto& S = data.S_at_chat.at(target);

  if (grad) {
    grad->assign(packed_size(n_labels), 0.0);
  }

  double logsum = 0.0;
  bool valid = true;
  // Gradient accumulators over the event-log term.
  double g_mu0 = 0.0;
  double g_gamma = 0.0;
  std::vector<double> g_nu(grad ? n_labels : 0, 0.0);
  std::vector<double> g_alpha(grad ? n_labels : 0, 0.0);

  walk_merged(data, target, gamma, grad != nullptr,
              [&](size_t i, const std::vector<double>& A, const std::vector<double>& D) {
                double lambda = p.mu0;
                double endo = 0.0;
                for (size_t f = 0; f < n_labels; ++f) {
                  lambda += p.nu[f] * S[f][i];
                  endo += p.alpha[f] * A[f];
                }
                lambda += endo / gamma;
                if (!std::isfinite(lambda)) {
                  std::ostringstream msg;
                  msg << "non-finite intensity at event index " << i;
                  throw NumericError(msg.str());
                }
                if (!(lambda > 0.0)) {
                  valid = false;
                  return;
                }
                logsum += std::log(lambda);
                if (grad) {
                  const double inv = 1.0 / lambda;
                  g_mu0 += inv;
                  double dgamma = 0.0;
                  for (size_t f = 0; f < n_labels; ++f) {
                    g_nu[f] += S[f][i] * inv;
                    g_alpha[f] += A[f] / gamma * inv;
                    dgamma += p.alpha[f] * (D[f] / gamma - A[f]);
                  }
                  g_gamma += dgamma / (gamma * gamma) * inv;
                }
              });

  if (!valid) return {kLoglikFloor, false};

  // Compensator terms.
  double value = logsum - p.mu0 * T;
  double comp_gamma = 0.0;
  for (size_t f = 0; f < n_labels; ++f) {
    value -= p.nu[f] * data.M1[f];
    double tail = 0.0;       // sum_j exp(-(T - t_j)/gamma)
    double tail_delta = 0.0; // sum_j (T - t_j) exp(-(T - t_j)/gamma)
    for (double tj : data.chat[f]) {
      const double w = std::exp(-(T - tj) / gamma);
      tail += w;
      if (grad) tail_delta += (T - tj) * w;
    }
    value += p.alpha[f] * (tail - static_cast<double>(data.chat[f].size()));
    if (grad) {
      (*grad)[2 + f] = g_nu[f] - data.M1[f];
      (*grad)[2 + n_labels + f] =
          g_alpha[f] + tail - static_cast<double>(data.chat[f].size());
      comp_gamma += p.alpha[f] * tail_delta;
    }
  }
  if (grad) {
    (*grad)[0] = g_mu0 - T;
    (*grad)[1] = g_gamma + comp_gamma / (gamma * gamma);
  }
  if (!std::isfinite(value)) throw NumericError("non-finite log-likelihood value");
  return {value, true};
}

LoglikValue loglik_session(size_t target, const HawkesParams& params,
                           const VideoSession& session, LoglikMethod method) {
  params.validate();
  if (method == LoglikMethod::Naive) return loglik_session_naive(session, target, params);
  const auto data = LikelihoodData::build(session, params.shape);
  return loglik_session_data(data, target, params.per_emotion.at(target));
}

LogLikReport loglik_total(size_t target, const HawkesParams& params,
                          const std::vector<VideoSession>& sessions) {
  if (sessions.empty()) throw InvalidArgument("loglik_total needs at least one session");
  LogLikReport report;
  for (const auto& session : sessions) {
    const auto value = loglik_session(target, params, session);
    report.per_session.push_back(value.value);
    report.value += value.value;
    report.n_events += session.chat.at(target).size();
    report.valid = report.valid && value.valid;
  }
  report.normalized =
      report.n_events > 0 ? report.value / static_cast<double>(report.n_events) : 0.0;
  return report;
}

std::vector<double> endo_contributions(const LikelihoodData& data, size_t target,
                                       const EmotionParams& p) {
  check_packed(p, data.n_labels);
  std::vector<double> endo(data.chat.at(target).size(), 0.0);
  walk_merged(data, target, p.gamma, false,
              [&](size_t i, const std::vector<double>& A, const std::vector<double>&) {
                double sum = 0.0;
                for (size_t f = 0; f < data.n_labels; ++f) sum += p.alpha[f] * A[f];
                endo[i] = sum / p.gamma;
              });
  return endo;
}

std::vector<double> compensator_at_events(const VideoSession& session, size_t target,
                                          const HawkesParams& params) {
  const auto& p = params.per_emotion.at(target);
  const auto data = LikelihoodData::build(session, params.shape);
  const size_t n_labels = data.n_labels;

  // Count of f-events strictly before each target event, via the same walk.
  std::vector<double> values(data.chat.at(target).size(), 0.0);
  std::vector<size_t> counts(n_labels, 0);
  size_t merged_pos = 0;
  walk_merged(data, target, p.gamma, false,
              [&](size_t i, const std::vector<double>& A, const std::vector<double>&) {
                const double t = data.chat[target][i];
                while (merged_pos < data.merged_times.size() &&
                       data.merged_times[merged_pos] < t) {
                  ++counts[data.merged_labels[merged_pos]];
                  ++merged_pos;
                }
                double value = p.mu0 * t;
                for (size_t f = 0; f < n_labels; ++f) {
                  if (p.nu[f] != 0.0) {
                    value += p.nu[f] *
                             background_mass_M1(session.subtitles.at(f), t, params.shape);
                  }
                  // sum_j (1 - exp(-(t - t_j)/gamma)) = count - A
                  value += p.alpha[f] * (static_cast<double>(counts[f]) - A[f]);
                }
                values[i] = value;
              });
  return values;
}

}  // namespace hawkes
