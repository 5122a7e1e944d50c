#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "core/analytics.hpp"
#include "core/errors.hpp"

namespace hawkes {

std::vector<std::vector<double>> simulate_subtitles(const std::vector<double>& rates,
                                                    double duration, Rng& rng) {
  std::vector<std::vector<double>> subtitles(rates.size());
  for (size_t f = 0; f < rates.size(); ++f) {
    const double rate = rates[f];
    if (rate < 0.0) throw InvalidArgument("subtitle rate must be >= 0");
    if (rate == 0.0) continue;
    double t = rng.exponential(rate);
    while (t < duration) {
      subtitles[f].push_back(t);
      t += rng.exponential(rate);
    }
  }
  return subtitles;
}

namespace {

// Mutable thinning state for one session: per (target, source) decayed event
// sums R[e][f] = sum over f-events at or before now of exp(-(now-t_j)/gamma_e).
struct ThinningState {
  std::vector<std::vector<double>> R;

  explicit ThinningState(size_t n) : R(n, std::vector<double>(n, 0.0)) {}

  void decay(const HawkesParams& params, double dt) {
    if (dt <= 0.0) return;
    for (size_t e = 0; e < R.size(); ++e) {
      const double w = std::exp(-dt / params.per_emotion[e].gamma);
      for (double& v : R[e]) v *= w;
    }
  }

  void absorb(size_t label) {
    for (auto& row : R) row[label] += 1.0;
  }

  double endo_rate(const HawkesParams& params, size_t e) const {
    const auto& p = params.per_emotion[e];
    double sum = 0.0;
    for (size_t f = 0; f < R.size(); ++f) sum += p.alpha[f] * R[e][f];
    return sum / p.gamma;
  }
};

// Upper bound on sum_f nu_col[f] * S^f(s) for s in (t, w_end], built from
// per-subtitle suprema of the shape over the window.
double exo_window_bound(const HawkesParams& params,
                        const std::vector<std::vector<double>>& subtitles,
                        const std::vector<double>& nu_col_sum, double t, double w_end) {
  double bound = 0.0;
  for (size_t f = 0; f < subtitles.size(); ++f) {
    if (nu_col_sum[f] == 0.0) continue;
    double s_max = 0.0;
    for (double tau : subtitles[f]) {
      if (tau >= w_end) break;
      s_max += shape_max_on_interval(t - tau, w_end - tau, params.shape);
    }
    bound += nu_col_sum[f] * s_max;
  }
  return bound;
}

}  // namespace

VideoSession simulate_session(const HawkesParams& params, const SimConfig& config,
                              size_t session_index) {
  params.validate();
  if (!(config.duration > 0.0)) throw InvalidArgument("duration must be > 0");
  const size_t n = params.emotions.size();
  const double T = config.duration;

  VideoSession session;
  {
    std::ostringstream id;
    id << "sim-" << session_index;
    session.id = id.str();
  }
  session.duration = T;
  session.chat.resize(n);

  if (!config.fixed_subtitles.empty()) {
    if (config.fixed_subtitles.size() != n) {
      throw InvalidArgument("fixed_subtitles must have one list per label");
    }
    session.subtitles = config.fixed_subtitles;
    for (auto& list : session.subtitles) std::sort(list.begin(), list.end());
  } else {
    std::vector<double> rates = config.subtitle_rates;
    rates.resize(n, 0.0);
    Rng sub_rng(substream_seed(config.seed, "sim-subtitles", session_index));
    session.subtitles = simulate_subtitles(rates, T, sub_rng);
  }

  double mu0_total = 0.0;
  std::vector<double> nu_col_sum(n, 0.0);
  for (size_t e = 0; e < n; ++e) {
    mu0_total += params.per_emotion[e].mu0;
    for (size_t f = 0; f < n; ++f) nu_col_sum[f] += params.per_emotion[e].nu[f];
  }

  Rng rng(substream_seed(config.seed, "sim-thinning", session_index));
  ThinningState state(n);
  std::vector<double> lambda(n, 0.0);

  double t = 0.0;
  double w_end = 0.0;
  double bound = 0.0;
  const auto refresh_bound = [&] {
    w_end = std::min(T, t + config.bound_window);
    double endo = 0.0;
    for (size_t e = 0; e < n; ++e) endo += state.endo_rate(params, e);
    bound = mu0_total +
            exo_window_bound(params, session.subtitles, nu_col_sum, t, w_end) + endo;
  };
  refresh_bound();
  size_t n_events = 0;

  while (t < T) {
    // A nonpositive bound means nothing can fire in this window.
    const double step = bound > 0.0 ? rng.exponential(bound) : w_end - t;
    if (!(bound > 0.0) || t + step >= w_end) {
      state.decay(params, w_end - t);
      t = w_end;
      if (t >= T) break;
      refresh_bound();
      continue;
    }

    state.decay(params, step);
    t += step;

    double lambda_total = 0.0;
    for (size_t e = 0; e < n; ++e) {
      const auto& p = params.per_emotion[e];
      double rate = p.mu0 + state.endo_rate(params, e);
      for (size_t f = 0; f < n; ++f) {
        if (p.nu[f] == 0.0) continue;
        rate += p.nu[f] * background_S(t, session.subtitles[f], params.shape);
      }
      lambda[e] = rate;
      lambda_total += rate;
    }
    if (lambda_total > bound * (1.0 + 1e-9) + 1e-12) {
      throw NumericError("thinning bound violated; bound policy is broken");
    }

    const double u = rng.uniform01() * bound;
    if (u >= lambda_total) continue;  // rejected; bound still valid on (t, w_end]

    // Accepted: attribute the event to a label by intensity share, reusing u.
    size_t label = n - 1;
    double cumulative = 0.0;
    for (size_t e = 0; e < n; ++e) {
      cumulative += lambda[e];
      if (u < cumulative) {
        label = e;
        break;
      }
    }
    session.chat[label].push_back(t);
    state.absorb(label);
    if (++n_events > config.max_events) {
      std::ostringstream msg;
      msg << "session " << session.id << " exceeded " << config.max_events
          << " events before t=" << t << "; parameters look supercritical";
      throw SupercriticalError(msg.str());
    }
    refresh_bound();
  }
  return session;
}

SessionCollection simulate_collection(const HawkesParams& params,
                                      const SimConfig& config) {
  const double rho = spectral_radius(params.alpha_matrix());
  if (rho >= 1.0) {
    std::cerr << "warning: branching matrix is supercritical (spectral radius "
              << rho << " >= 1); simulation may hit the event cap\n";
  }
  SessionCollection collection;
  collection.emotions = params.emotions;
  collection.sessions.reserve(config.n_sessions);
  for (size_t k = 0; k < config.n_sessions; ++k) {
    collection.sessions.push_back(simulate_session(params, config, k));
  }
  return collection;
}

RecoveryReport round_trip_validate(const HawkesParams& truth, const SimConfig& sim,
                                   const FitConfig& fit_config,
                                   const ToleranceSpec& tolerances) {
  truth.validate();
  RecoveryReport report;
  const SessionCollection collection = simulate_collection(truth, sim);
  report.n_sessions = collection.sessions.size();
  report.duration = sim.duration;
  const size_t n = truth.emotions.size();
  report.events_per_label.resize(n);
  for (size_t e = 0; e < n; ++e) {
    report.events_per_label[e] = collection.total_chat_events(e);
  }

  report.fit = bootstrap_fit(collection, truth.shape, fit_config);

  auto add_check = [&](const std::string& name, double truth_value, double estimate,
                       double stddev, bool gated, double tol_abs) {
    ParamCheck check;
    check.name = name;
    check.truth = truth_value;
    check.estimate = estimate;
    check.stddev = stddev;
    check.error_abs = std::abs(estimate - truth_value);
    check.error_rel =
        truth_value != 0.0 ? check.error_abs / std::abs(truth_value) : 0.0;
    check.gated = gated;
    check.within_tol = check.error_abs <= tol_abs;
    check.within_2std = check.error_abs <= 2.0 * stddev;
    if (gated && !check.within_tol) report.passed = false;
    report.checks.push_back(check);
  };

  for (size_t e = 0; e < n; ++e) {
    const auto& label_e = truth.emotions.label(e);
    const auto& pt = truth.per_emotion.at(e);
    const auto& pf = report.fit.params.per_emotion.at(e);
    const auto& ps = report.fit.stddev.per_emotion.at(e);
    add_check("mu0[" + label_e + "]", pt.mu0, pf.mu0, ps.mu0, true,
              tolerances.mu0_rel * std::abs(pt.mu0));
    add_check("gamma[" + label_e + "]", pt.gamma, pf.gamma, ps.gamma, true,
              tolerances.gamma_rel * std::abs(pt.gamma));
    for (size_t f = 0; f < n; ++f) {
      const auto& label_f = truth.emotions.label(f);
      add_check("nu[" + label_e + "," + label_f + "]", pt.nu[f], pf.nu[f], ps.nu[f],
                pt.nu[f] >= tolerances.nu_floor, tolerances.nu_rel * pt.nu[f]);
      add_check("alpha[" + label_e + "," + label_f + "]", pt.alpha[f], pf.alpha[f],
                ps.alpha[f], pt.alpha[f] >= tolerances.alpha_floor,
                std::max(tolerances.alpha_rel * pt.alpha[f], tolerances.alpha_abs));
    }
  }
  if (report.fit.any_failed) report.passed = false;
  return report;
}

}  // namespace hawkes
