#include "core/intensity.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace hawkes {

void HawkesParams::validate() const {
  const size_t n = emotions.size();
  if (per_emotion.size() != n) {
    throw InvalidArgument("per_emotion size does not match the emotion set");
  }
  for (const auto& p : per_emotion) {
    if (p.nu.size() != n || p.alpha.size() != n) {
      throw InvalidArgument("nu/alpha length does not match the emotion set");
    }
    if (!(p.gamma > 0.0)) throw InvalidArgument("gamma must be > 0");
    if (p.mu0 < 0.0) throw InvalidArgument("mu0 must be >= 0");
    for (double v : p.nu)
      if (v < 0.0) throw InvalidArgument("nu entries must be >= 0");
    for (double v : p.alpha)
      if (v < 0.0) throw InvalidArgument("alpha entries must be >= 0");
  }
}

std::vector<std::vector<double>> HawkesParams::alpha_matrix() const {
  std::vector<std::vector<double>> m;
  m.reserve(per_emotion.size());
  for (const auto& p : per_emotion) m.push_back(p.alpha);
  return m;
}

double background_S(double t, const std::vector<double>& subtitle_times,
                    const ShapeConfig& shape) {
  double sum = 0.0;
  for (double tau : subtitle_times) {
    if (tau >= t) break;  // sorted; later subtitles cannot contribute
    sum += shape_value(t - tau, shape);
  }
  return sum;
}

double background_mass_M1(const std::vector<double>& subtitle_times, double t,
                          const ShapeConfig& shape) {
  double sum = 0.0;
  for (double tau : subtitle_times) {
    if (tau >= t) break;
    sum += shape_cumulative(t - tau, shape);
  }
  return sum;
}

double exo_rate(double t, size_t target, const HawkesParams& params,
                const VideoSession& session) {
  const auto& p = params.per_emotion.at(target);
  double rate = p.mu0;
  for (size_t f = 0; f < params.emotions.size(); ++f) {
    if (p.nu[f] == 0.0) continue;
    rate += p.nu[f] * background_S(t, session.subtitles.at(f), params.shape);
  }
  return rate;
}

double total_intensity(double t, size_t target, const HawkesParams& params,
                       const VideoSession& session) {
  const auto& p = params.per_emotion.at(target);
  double rate = exo_rate(t, target, params, session);
  for (size_t f = 0; f < params.emotions.size(); ++f) {
    if (p.alpha[f] == 0.0) continue;
    const ExpKernelParams kernel{p.alpha[f], p.gamma};
    for (double tj : session.chat.at(f)) {
      if (tj >= t) break;  // strict: events at t do not excite t
      rate += exp_kernel(t - tj, kernel);
    }
  }
  return rate;
}

double compensator(size_t target, const HawkesParams& params,
                   const VideoSession& session, double t) {
  const auto& p = params.per_emotion.at(target);
  double value = p.mu0 * t;
  for (size_t f = 0; f < params.emotions.size(); ++f) {
    if (p.nu[f] != 0.0) {
      value += p.nu[f] * background_mass_M1(session.subtitles.at(f), t, params.shape);
    }
    if (p.alpha[f] != 0.0) {
      for (double tj : session.chat.at(f)) {
        if (tj >= t) break;
        value += p.alpha[f] * (1.0 - std::exp(-(t - tj) / p.gamma));
      }
    }
  }
  return value;
}

BackgroundCache BackgroundCache::build(const VideoSession& session,
                                       const ShapeConfig& shape) {
  const size_t n_labels = session.chat.size();
  BackgroundCache cache;
  cache.duration = session.duration;
  cache.S_at_chat.resize(n_labels);
  cache.M1.resize(n_labels);
  for (size_t f = 0; f < n_labels; ++f) {
    cache.M1[f] = background_mass_M1(session.subtitles[f], session.duration, shape);
  }
  for (size_t e = 0; e < n_labels; ++e) {
    cache.S_at_chat[e].resize(n_labels);
    for (size_t f = 0; f < n_labels; ++f) {
      auto& values = cache.S_at_chat[e][f];
      values.reserve(session.chat[e].size());
      for (double t : session.chat[e]) {
        values.push_back(background_S(t, session.subtitles[f], shape));
      }
    }
  }
  return cache;
}

}  // namespace hawkes
