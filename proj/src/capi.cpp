#include "hawkes/hawkes.h"

#include <cstring>
#include <string>

#include "core/analytics.hpp"
#include "core/errors.hpp"
#include "core/events_io.hpp"
#include "core/fitter.hpp"
#include "core/likelihood.hpp"
#include "core/params_io.hpp"
#include "core/simulator.hpp"

struct hawkes_collection {
  hawkes::SessionCollection impl;
};

struct hawkes_params {
  hawkes::HawkesParams impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Run a callable at the API boundary, translating the exception hierarchy
// into status codes and the thread-local message.
template <typename Fn>
hawkes_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HAWKES_OK;
  } catch (const hawkes::SupercriticalError& e) {
    set_error(e.what());
    return HAWKES_ERR_SUPERCRITICAL;
  } catch (const hawkes::NumericError& e) {
    set_error(e.what());
    return HAWKES_ERR_NUMERIC;
  } catch (const hawkes::ParseError& e) {
    set_error(e.what());
    return HAWKES_ERR_PARSE;
  } catch (const hawkes::IoError& e) {
    set_error(e.what());
    return HAWKES_ERR_IO;
  } catch (const hawkes::InvalidArgument& e) {
    set_error(e.what());
    return HAWKES_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HAWKES_ERR_NUMERIC;
  }
}

hawkes_status require(bool ok, const char* message) {
  if (ok) return HAWKES_OK;
  set_error(message);
  return HAWKES_ERR_INVALID_ARGUMENT;
}

hawkes::ShapeConfig to_shape(const hawkes_shape& shape) {
  if (shape.family == HAWKES_SHAPE_LOGNORMAL) {
    return hawkes::ShapeConfig::lognormal(shape.mu, shape.sigma);
  }
  return hawkes::ShapeConfig::powerlaw(shape.c, shape.eps);
}

hawkes::FitConfig to_fit_config(const hawkes_fit_options& options) {
  hawkes::FitConfig config;
  config.n_replicas = options.n_replicas;
  config.frac = options.frac;
  config.n_starts = options.n_starts;
  config.max_iterations = options.max_iterations;
  config.grad_tol = options.grad_tol;
  config.value_tol = options.value_tol;
  config.seed = options.seed;
  config.threads = options.threads;
  return config;
}

}  // namespace

extern "C" {

const char* hawkes_version(void) { return "1.0.0"; }

const char* hawkes_status_name(hawkes_status status) {
  switch (status) {
    case HAWKES_OK: return "ok";
    case HAWKES_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HAWKES_ERR_IO: return "io_error";
    case HAWKES_ERR_PARSE: return "parse_error";
    case HAWKES_ERR_NUMERIC: return "numeric_error";
    case HAWKES_ERR_SUPERCRITICAL: return "supercritical";
    case HAWKES_ERR_VALIDATION: return "validation_failed";
  }
  return "unknown";
}

const char* hawkes_last_error(void) { return g_last_error.c_str(); }

void hawkes_shape_default(hawkes_shape* out) {
  const auto cfg = hawkes::ShapeConfig::default_lognormal();
  out->family = HAWKES_SHAPE_LOGNORMAL;
  out->mu = cfg.mu;
  out->sigma = cfg.sigma;
  out->c = 2.5;
  out->eps = 1.0 / 60.0;
}

hawkes_status hawkes_shape_lognormal(double peak_minutes, double median_minutes,
                                     hawkes_shape* out) {
  if (auto bad = require(out != nullptr, "null output pointer")) return bad;
  return guarded([&] {
    const auto [mu, sigma] = hawkes::solve_lognormal_params(peak_minutes, median_minutes);
    out->family = HAWKES_SHAPE_LOGNORMAL;
    out->mu = mu;
    out->sigma = sigma;
    out->c = 2.5;
    out->eps = 1.0 / 60.0;
  });
}

hawkes_status hawkes_collection_load(const char* path, const char* const* labels,
                                     size_t n_labels, int allow_other_labels,
                                     int clip_to_subtitle_window,
                                     hawkes_collection** out) {
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] {
    hawkes::EmotionSet emotions =
        labels == nullptr || n_labels == 0
            ? hawkes::EmotionSet::basic6()
            : hawkes::EmotionSet(std::vector<std::string>(labels, labels + n_labels));
    hawkes::ParseOptions options;
    options.allow_other_labels = allow_other_labels != 0;
    options.clip_to_subtitle_window = clip_to_subtitle_window != 0;
    auto collection = hawkes::parse_events_file(path, emotions, options);
    *out = new hawkes_collection{std::move(collection)};
  });
}

hawkes_status hawkes_collection_save(const hawkes_collection* c, const char* path) {
  if (auto bad = require(c && path, "null argument")) return bad;
  return guarded([&] { hawkes::write_events_file(c->impl, path); });
}

hawkes_status hawkes_collection_filter_median_interval(const hawkes_collection* c,
                                                       double min_gap_min,
                                                       double max_gap_min,
                                                       hawkes_collection** out) {
  if (auto bad = require(c && out, "null argument")) return bad;
  return guarded([&] {
    *out = new hawkes_collection{
        hawkes::filter_median_interval(c->impl, min_gap_min, max_gap_min)};
  });
}

hawkes_status hawkes_collection_filter_rate_quantiles(const hawkes_collection* c,
                                                      double lo, double hi,
                                                      double* bounds_lo,
                                                      double* bounds_hi,
                                                      hawkes_collection** out) {
  if (auto bad = require(c && out, "null argument")) return bad;
  return guarded([&] {
    hawkes::QuantileBounds bounds;
    auto filtered = hawkes::filter_rate_quantiles(c->impl, lo, hi, &bounds);
    if (bounds_lo) {
      std::memcpy(bounds_lo, bounds.lo.data(), bounds.lo.size() * sizeof(double));
    }
    if (bounds_hi) {
      std::memcpy(bounds_hi, bounds.hi.data(), bounds.hi.size() * sizeof(double));
    }
    *out = new hawkes_collection{std::move(filtered)};
  });
}

hawkes_status hawkes_collection_write_stats(const hawkes_collection* c,
                                            const char* csv_path) {
  if (auto bad = require(c && csv_path, "null argument")) return bad;
  return guarded([&] { hawkes::write_stats_csv(c->impl, csv_path); });
}

size_t hawkes_collection_n_sessions(const hawkes_collection* c) {
  return c ? c->impl.sessions.size() : 0;
}

size_t hawkes_collection_n_labels(const hawkes_collection* c) {
  return c ? c->impl.emotions.size() : 0;
}

const char* hawkes_collection_label(const hawkes_collection* c, size_t index) {
  if (!c || index >= c->impl.emotions.size()) return nullptr;
  return c->impl.emotions.label(index).c_str();
}

size_t hawkes_collection_n_events(const hawkes_collection* c, const char* label) {
  if (!c) return 0;
  if (!label) {
    size_t total = 0;
    for (size_t e = 0; e < c->impl.emotions.size(); ++e) {
      total += c->impl.total_chat_events(e);
    }
    return total;
  }
  const auto idx = c->impl.emotions.find(label);
  return idx ? c->impl.total_chat_events(*idx) : 0;
}

void hawkes_collection_free(hawkes_collection* c) { delete c; }

hawkes_status hawkes_params_load(const char* path, hawkes_params** out) {
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new hawkes_params{hawkes::load_params_file(path)}; });
}

hawkes_status hawkes_params_save(const hawkes_params* p, const char* path) {
  if (auto bad = require(p && path, "null argument")) return bad;
  return guarded([&] { hawkes::write_params_file(p->impl, path); });
}

size_t hawkes_params_n_labels(const hawkes_params* p) {
  return p ? p->impl.emotions.size() : 0;
}

const char* hawkes_params_label(const hawkes_params* p, size_t index) {
  if (!p || index >= p->impl.emotions.size()) return nullptr;
  return p->impl.emotions.label(index).c_str();
}

hawkes_status hawkes_params_spectral_radius(const hawkes_params* p, double* rho) {
  if (auto bad = require(p && rho, "null argument")) return bad;
  return guarded([&] { *rho = hawkes::spectral_radius(p->impl.alpha_matrix()); });
}

void hawkes_params_free(hawkes_params* p) { delete p; }

void hawkes_fit_options_default(hawkes_fit_options* out) {
  const hawkes::FitConfig config;
  out->n_replicas = config.n_replicas;
  out->frac = config.frac;
  out->n_starts = config.n_starts;
  out->max_iterations = config.max_iterations;
  out->grad_tol = config.grad_tol;
  out->value_tol = config.value_tol;
  out->seed = config.seed;
  out->threads = config.threads;
}

hawkes_status hawkes_fit(const hawkes_collection* c, const hawkes_shape* shape,
                         const hawkes_fit_options* options, const char* report_path,
                         hawkes_params** params_out, size_t* n_failed_labels) {
  if (auto bad = require(c && shape && options && params_out, "null argument")) {
    return bad;
  }
  return guarded([&] {
    const auto result =
        hawkes::bootstrap_fit(c->impl, to_shape(*shape), to_fit_config(*options));
    if (report_path) hawkes::write_fit_report(result, report_path);
    if (n_failed_labels) {
      size_t failed = 0;
      for (const auto& used : result.replicas_used) {
        if (used.empty()) ++failed;
      }
      *n_failed_labels = failed;
    }
    *params_out = new hawkes_params{result.params};
  });
}

hawkes_status hawkes_loglik(const hawkes_params* p, const hawkes_collection* c,
                            const char* label, double* value, double* normalized) {
  if (auto bad = require(p && c && label && value, "null argument")) return bad;
  return guarded([&] {
    if (!(p->impl.emotions == c->impl.emotions)) {
      throw hawkes::InvalidArgument("params and collection disagree on labels");
    }
    const size_t target = p->impl.emotions.index_of(label);
    const auto report = hawkes::loglik_total(target, p->impl, c->impl.sessions);
    *value = report.value;
    if (normalized) *normalized = report.normalized;
  });
}

void hawkes_sim_options_default(hawkes_sim_options* out) {
  out->duration = 120.0;
  out->n_sessions = 1;
  out->subtitle_rates = nullptr;
  out->n_subtitle_rates = 0;
  out->seed = 42;
  out->max_events = 1000000;
}

hawkes_status hawkes_simulate(const hawkes_params* p,
                              const hawkes_sim_options* options,
                              hawkes_collection** out) {
  if (auto bad = require(p && options && out, "null argument")) return bad;
  return guarded([&] {
    const size_t n = p->impl.emotions.size();
    hawkes::SimConfig config;
    config.duration = options->duration;
    config.n_sessions = options->n_sessions;
    config.seed = options->seed;
    config.max_events = options->max_events;
    if (options->n_subtitle_rates == 1) {
      config.subtitle_rates.assign(n, options->subtitle_rates[0]);
    } else if (options->n_subtitle_rates > 1) {
      if (options->n_subtitle_rates != n) {
        throw hawkes::InvalidArgument("subtitle rate count must be 1 or the label count");
      }
      config.subtitle_rates.assign(options->subtitle_rates,
                                   options->subtitle_rates + n);
    }
    *out = new hawkes_collection{hawkes::simulate_collection(p->impl, config)};
  });
}

hawkes_status hawkes_analyze(const hawkes_params* p, const hawkes_collection* c,
                             const char* influence_csv, const char* summary_csv,
                             const char* branching_json, const char* matrices_txt) {
  if (auto bad = require(p && c, "null argument")) return bad;
  return guarded([&] {
    if (!(p->impl.emotions == c->impl.emotions)) {
      throw hawkes::InvalidArgument("params and collection disagree on labels");
    }
    if (influence_csv || summary_csv) {
      std::vector<hawkes::InfluenceRow> rows;
      for (const auto& session : c->impl.sessions) {
        auto report = hawkes::influence_decomposition(p->impl, session);
        for (auto& row : report.rows) rows.push_back(std::move(row));
      }
      if (influence_csv) {
        hawkes::write_influence_csv(rows, p->impl.emotions, influence_csv);
      }
      if (summary_csv) {
        hawkes::write_influence_summary_csv(rows, p->impl.emotions, summary_csv);
      }
    }
    if (branching_json) {
      const auto report = hawkes::branching_report(p->impl.alpha_matrix());
      hawkes::write_branching_json(report, p->impl.emotions, branching_json);
    }
    if (matrices_txt) hawkes::write_matrix_dump(p->impl, matrices_txt);
  });
}

hawkes_status hawkes_analyze_grid(const hawkes_params* p, const hawkes_collection* c,
                                  double grid_dt, const char* influence_csv) {
  if (auto bad = require(p && c && influence_csv, "null argument")) return bad;
  return guarded([&] {
    if (!(p->impl.emotions == c->impl.emotions)) {
      throw hawkes::InvalidArgument("params and collection disagree on labels");
    }
    std::vector<hawkes::InfluenceRow> rows;
    for (const auto& session : c->impl.sessions) {
      auto report = hawkes::influence_decomposition_grid(p->impl, session, grid_dt);
      for (auto& row : report.rows) rows.push_back(std::move(row));
    }
    hawkes::write_influence_csv(rows, p->impl.emotions, influence_csv);
  });
}

hawkes_status hawkes_residual_ks(const hawkes_params* p, const hawkes_collection* c,
                                 size_t session_index, const char* label,
                                 double* ks_statistic, double* p_value) {
  if (auto bad = require(p && c && label && ks_statistic && p_value, "null argument")) {
    return bad;
  }
  return guarded([&] {
    if (session_index >= c->impl.sessions.size()) {
      throw hawkes::InvalidArgument("session index out of range");
    }
    const size_t target = p->impl.emotions.index_of(label);
    const auto diag = hawkes::residual_diagnostics(
        p->impl, c->impl.sessions[session_index], target);
    *ks_statistic = diag.ks_statistic;
    *p_value = diag.p_value;
  });
}

void hawkes_validate_options_default(hawkes_validate_options* out) {
  out->n_sessions = 50;
  out->duration = 120.0;
  out->subtitle_rate = 1.0;
  hawkes_fit_options_default(&out->fit);
  const hawkes::ToleranceSpec tol;
  out->alpha_floor = tol.alpha_floor;
  out->tol_alpha_rel = tol.alpha_rel;
  out->tol_alpha_abs = tol.alpha_abs;
  out->tol_mu0_rel = tol.mu0_rel;
  out->nu_floor = tol.nu_floor;
  out->tol_nu_rel = tol.nu_rel;
  out->tol_gamma_rel = tol.gamma_rel;
}

hawkes_status hawkes_validate(const hawkes_params* truth,
                              const hawkes_validate_options* options,
                              const char* report_path, int* passed) {
  if (auto bad = require(truth && options && passed, "null argument")) return bad;
  return guarded([&] {
    hawkes::SimConfig sim;
    sim.duration = options->duration;
    sim.n_sessions = options->n_sessions;
    sim.subtitle_rates.assign(truth->impl.emotions.size(), options->subtitle_rate);
    sim.seed = options->fit.seed;

    hawkes::ToleranceSpec tol;
    tol.alpha_floor = options->alpha_floor;
    tol.alpha_rel = options->tol_alpha_rel;
    tol.alpha_abs = options->tol_alpha_abs;
    tol.mu0_rel = options->tol_mu0_rel;
    tol.nu_floor = options->nu_floor;
    tol.nu_rel = options->tol_nu_rel;
    tol.gamma_rel = options->tol_gamma_rel;

    const auto report = hawkes::round_trip_validate(
        truth->impl, sim, to_fit_config(options->fit), tol);
    if (report_path) hawkes::write_recovery_report(report, report_path);
    *passed = report.passed ? 1 : 0;
  });
}

}  // extern "C"
