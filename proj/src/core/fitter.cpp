#include "core/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/threading.hpp"

namespace hawkes {

namespace {

BoxSpec make_box(const ParamBounds& b, size_t n_labels) {
  BoxSpec box;
  const size_t dim = packed_size(n_labels);
  box.lower.resize(dim);
  box.upper.resize(dim);
  box.lower[0] = b.mu0_lo;
  box.upper[0] = b.mu0_hi;
  box.lower[1] = b.gamma_lo;
  box.upper[1] = b.gamma_hi;
  for (size_t f = 0; f < n_labels; ++f) {
    box.lower[2 + f] = b.nu_lo;
    box.upper[2 + f] = b.nu_hi;
    box.lower[2 + n_labels + f] = b.alpha_lo;
    box.upper[2 + n_labels + f] = b.alpha_hi;
  }
  return box;
}

std::vector<double> pack(const EmotionParams& p) {
  std::vector<double> x;
  x.reserve(packed_size(p.nu.size()));
  x.push_back(p.mu0);
  x.push_back(p.gamma);
  x.insert(x.end(), p.nu.begin(), p.nu.end());
  x.insert(x.end(), p.alpha.begin(), p.alpha.end());
  return x;
}

EmotionParams unpack(const std::vector<double>& x, size_t n_labels) {
  EmotionParams p;
  p.mu0 = x[0];
  p.gamma = x[1];
  p.nu.assign(x.begin() + 2, x.begin() + 2 + n_labels);
  p.alpha.assign(x.begin() + 2 + n_labels, x.end());
  return p;
}

// Negated corpus log-likelihood with a fixed session summation order.
double neg_corpus_loglik(const std::vector<const LikelihoodData*>& data, size_t target,
                         const EmotionParams& p, std::vector<double>* grad) {
  double total = 0.0;
  if (grad) grad->assign(packed_size(p.nu.size()), 0.0);
  std::vector<double> session_grad;
  bool valid = true;
  for (const auto* d : data) {
    const auto value = loglik_session_data(*d, target, p, grad ? &session_grad : nullptr);
    valid = valid && value.valid;
    total += value.value;
    if (grad) {
      for (size_t i = 0; i < grad->size(); ++i) (*grad)[i] += session_grad[i];
    }
  }
  if (!valid) {
    // Sentinel: keep the line search finite and steer it back to feasibility.
    if (grad) grad->assign(packed_size(p.nu.size()), 0.0);
    return -kLoglikFloor;
  }
  if (grad) {
    for (double& g : *grad) g = -g;
  }
  return -total;
}

std::vector<std::pair<double, double>> profile_gamma(
    const std::vector<const LikelihoodData*>& data, size_t target,
    const EmotionParams& p, const ParamBounds& bounds) {
  static const double factors[] = {0.5, 0.625, 0.75, 0.875, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::vector<std::pair<double, double>> profile;
  for (double factor : factors) {
    EmotionParams q = p;
    q.gamma = std::clamp(p.gamma * factor, bounds.gamma_lo, bounds.gamma_hi);
    const double value = -neg_corpus_loglik(data, target, q, nullptr);
    if (!profile.empty() && profile.back().first == q.gamma) continue;  // clamped dup
    profile.emplace_back(q.gamma, value);
  }
  return profile;
}

}  // namespace

EmotionParams initial_params(size_t target, size_t n_labels, double events_per_minute) {
  EmotionParams p;
  p.mu0 = 0.5 * events_per_minute;
  p.gamma = 1.0;
  p.nu.assign(n_labels, 0.1);
  p.alpha.assign(n_labels, 0.1);
  p.alpha[target] = 0.3;
  return p;
}

EmotionFit fit_emotion(size_t target, const std::string& target_label,
                       const std::vector<const LikelihoodData*>& data,
                       const FitConfig& config) {
  if (data.empty()) throw InvalidArgument("fit_emotion needs at least one session");
  const size_t n_labels = data.front()->n_labels;
  size_t n_events = 0;
  double total_duration = 0.0;
  for (const auto* d : data) {
    if (d->n_labels != n_labels) throw InvalidArgument("sessions disagree on labels");
    n_events += d->n_events(target);
    total_duration += d->duration;
  }
  if (n_events == 0) {
    throw InvalidArgument("no events of label '" + target_label + "' to fit");
  }

  const BoxSpec box = make_box(config.bounds, n_labels);
  OptimizeOptions opt;
  opt.max_iterations = config.max_iterations;
  opt.grad_tol = config.grad_tol;
  opt.value_tol = config.value_tol;

  const EmotionParams base =
      initial_params(target, n_labels, static_cast<double>(n_events) / total_duration);

  Objective objective = [&](const std::vector<double>& x, std::vector<double>* grad) {
    return neg_corpus_loglik(data, target, unpack(x, n_labels), grad);
  };

  OptimizeResult best;
  bool have_best = false;
  bool any_improved = false;
  const int n_starts = std::max(1, config.n_starts);
  for (int start = 0; start < n_starts; ++start) {
    std::vector<double> x0 = pack(base);
    if (start > 0) {
      Rng rng(substream_seed(config.seed, "fit-init:" + target_label,
                             static_cast<uint64_t>(start)));
      for (double& v : x0) v *= rng.log_uniform_factor(config.jitter_factor);
    }
    OptimizeResult run = minimize_projected_lbfgs(objective, std::move(x0), box, opt);
    any_improved = any_improved || run.improved;
    if (!have_best || run.value < best.value) {
      best = std::move(run);
      have_best = true;
    }
  }

  EmotionFit fit;
  fit.params = unpack(best.x, n_labels);
  fit.loglik = -best.value;
  fit.status = best.status;
  fit.iterations = best.iterations;
  fit.grad_inf_norm = best.grad_inf_norm;
  fit.n_events = n_events;
  fit.converged = best.status == OptimStatus::Converged ||
                  best.status == OptimStatus::Stagnated;
  if (!any_improved && best.status == OptimStatus::LineSearchFailed) {
    fit.converged = false;  // every start failed its first line search
  }
  fit.gamma_profile = profile_gamma(data, target, fit.params, config.bounds);
  return fit;
}

std::vector<EmotionFit> fit_all(const std::vector<const LikelihoodData*>& data,
                                const EmotionSet& emotions, const FitConfig& config) {
  std::vector<EmotionFit> fits(emotions.size());
  parallel_for(emotions.size(), config.threads, [&](size_t e) {
    try {
      fits[e] = fit_emotion(e, emotions.label(e), data, config);
    } catch (const Error& err) {
      fits[e].error = err.what();
      fits[e].params.nu.assign(emotions.size(), config.bounds.nu_lo);
      fits[e].params.alpha.assign(emotions.size(), 0.0);
    }
  });
  return fits;
}

namespace {

std::vector<size_t> sample_without_replacement(size_t n, size_t m, Rng& rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i < m; ++i) {
    const size_t j = i + static_cast<size_t>(rng.uniform01() * static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

FitResult bootstrap_fit(const SessionCollection& collection, const ShapeConfig& shape,
                        const FitConfig& config) {
  if (collection.sessions.empty()) {
    throw InvalidArgument("bootstrap_fit needs at least one session");
  }
  if (!(config.frac > 0.0 && config.frac <= 1.0)) {
    throw InvalidArgument("bootstrap fraction must lie in (0, 1]");
  }
  if (config.n_replicas < 1) throw InvalidArgument("need at least one replica");

  const size_t n_labels = collection.emotions.size();
  const size_t n_sessions = collection.sessions.size();

  // Background caches are parameter-independent: build once, share across
  // replicas and labels. This is the dominant setup cost for large corpora.
  std::vector<LikelihoodData> data(n_sessions);
  parallel_for(n_sessions, config.threads, [&](size_t k) {
    data[k] = LikelihoodData::build(collection.sessions[k], shape);
  });

  const size_t m = std::clamp<size_t>(
      static_cast<size_t>(std::llround(config.frac * static_cast<double>(n_sessions))),
      1, n_sessions);

  FitResult result;
  result.n_replicas = config.n_replicas;
  result.frac = config.frac;
  result.seed = config.seed;
  result.replicas.resize(config.n_replicas);
  for (int r = 0; r < config.n_replicas; ++r) {
    Rng rng(substream_seed(config.seed, "bootstrap", static_cast<uint64_t>(r)));
    result.replicas[r].session_indices =
        config.frac >= 1.0 && m == n_sessions
            ? [&] {
                std::vector<size_t> all(n_sessions);
                std::iota(all.begin(), all.end(), size_t{0});
                return all;
              }()
            : sample_without_replacement(n_sessions, m, rng);
    result.replicas[r].per_emotion.resize(n_labels);
  }

  // One task per (replica, label): flat list for the worker pool.
  const size_t n_tasks = static_cast<size_t>(config.n_replicas) * n_labels;
  parallel_for(n_tasks, config.threads, [&](size_t task) {
    const size_t r = task / n_labels;
    const size_t e = task % n_labels;
    auto& replica = result.replicas[r];
    std::vector<const LikelihoodData*> subset;
    subset.reserve(replica.session_indices.size());
    for (size_t k : replica.session_indices) subset.push_back(&data[k]);
    try {
      replica.per_emotion[e] =
          fit_emotion(e, collection.emotions.label(e), subset, config);
    } catch (const Error& err) {
      replica.per_emotion[e].error = err.what();
    }
  });

  // Aggregate means and standard deviations over the replicas that produced
  // an estimate for each label.
  result.params.emotions = collection.emotions;
  result.params.shape = shape;
  result.params.per_emotion.resize(n_labels);
  result.stddev = result.params;
  result.replicas_used.resize(n_labels);
  result.status_per_emotion.resize(n_labels);

  for (size_t e = 0; e < n_labels; ++e) {
    std::vector<size_t> used;
    for (int r = 0; r < config.n_replicas; ++r) {
      if (result.replicas[r].per_emotion[e].error.empty()) used.push_back(r);
    }
    result.replicas_used[e] = used;

    auto& mean = result.params.per_emotion[e];
    auto& sd = result.stddev.per_emotion[e];
    mean.nu.assign(n_labels, 0.0);
    mean.alpha.assign(n_labels, 0.0);
    sd.nu.assign(n_labels, 0.0);
    sd.alpha.assign(n_labels, 0.0);
    sd.mu0 = 0.0;
    sd.gamma = 0.0;

    if (used.empty()) {
      result.any_failed = true;
      result.status_per_emotion[e] = "failed: no replica produced an estimate";
      mean.mu0 = 0.0;
      mean.gamma = 1.0;
      mean.nu.assign(n_labels, config.bounds.nu_lo);
      continue;
    }

    auto accumulate = [&](auto&& get) {
      double sum = 0.0;
      for (size_t r : used) sum += get(result.replicas[r].per_emotion[e].params);
      const double avg = sum / static_cast<double>(used.size());
      double var = 0.0;
      for (size_t r : used) {
        const double d = get(result.replicas[r].per_emotion[e].params) - avg;
        var += d * d;
      }
      const double stdev =
          used.size() > 1 ? std::sqrt(var / static_cast<double>(used.size() - 1)) : 0.0;
      return std::make_pair(avg, stdev);
    };

    std::tie(mean.mu0, sd.mu0) = accumulate([](const EmotionParams& p) { return p.mu0; });
    std::tie(mean.gamma, sd.gamma) =
        accumulate([](const EmotionParams& p) { return p.gamma; });
    for (size_t f = 0; f < n_labels; ++f) {
      std::tie(mean.nu[f], sd.nu[f]) =
          accumulate([f](const EmotionParams& p) { return p.nu[f]; });
      std::tie(mean.alpha[f], sd.alpha[f]) =
          accumulate([f](const EmotionParams& p) { return p.alpha[f]; });
    }

    int converged = 0;
    for (size_t r : used) {
      if (result.replicas[r].per_emotion[e].converged) ++converged;
    }
    std::ostringstream status;
    status << "converged " << converged << "/" << used.size();
    if (used.size() < static_cast<size_t>(config.n_replicas)) {
      status << " (" << config.n_replicas - used.size() << " replica(s) skipped)";
    }
    result.status_per_emotion[e] = status.str();
  }

  // Full-collection log-likelihood and gamma profile at the mean parameters.
  result.loglik_per_emotion.assign(n_labels, 0.0);
  result.diagnostics.resize(n_labels);
  std::vector<const LikelihoodData*> all;
  all.reserve(n_sessions);
  for (const auto& d : data) all.push_back(&d);
  for (size_t e = 0; e < n_labels; ++e) {
    if (!result.replicas_used[e].empty()) {
      const double value =
          -neg_corpus_loglik(all, e, result.params.per_emotion[e], nullptr);
      result.loglik_per_emotion[e] = value;
      result.loglik_total += value;
      result.diagnostics[e].params = result.params.per_emotion[e];
      result.diagnostics[e].loglik = value;
      result.diagnostics[e].n_events = 0;
      for (const auto* d : all) result.diagnostics[e].n_events += d->n_events(e);
      result.diagnostics[e].gamma_profile =
          profile_gamma(all, e, result.params.per_emotion[e], config.bounds);
    }
  }
  return result;
}

}  // namespace hawkes
