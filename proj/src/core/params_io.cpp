#include "core/params_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "core/errors.hpp"

namespace hawkes {

using nlohmann::json;

namespace {

void dump_to_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON in " + path);
  return j;
}

json emotion_params_to_json(const EmotionSet& emotions, const EmotionParams& p,
                            size_t target) {
  json j = json::object();
  j["target"] = emotions.label(target);
  j["mu0"] = p.mu0;
  j["gamma"] = p.gamma;
  j["nu"] = p.nu;
  j["alpha"] = p.alpha;
  return j;
}

}  // namespace

json shape_to_json(const ShapeConfig& shape) {
  json j = json::object();
  j["family"] = shape_family_name(shape.family);
  if (shape.family == ShapeFamily::LogNormal) {
    j["mu"] = shape.mu;
    j["sigma"] = shape.sigma;
  } else {
    j["c"] = shape.c;
    j["eps"] = shape.eps;
  }
  return j;
}

ShapeConfig shape_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ParseError("shape config needs a 'family' field");
  }
  const auto family = shape_family_from_name(j["family"].get<std::string>());
  if (family == ShapeFamily::LogNormal) {
    if (!j.contains("mu") || !j.contains("sigma")) {
      throw ParseError("log-normal shape needs 'mu' and 'sigma'");
    }
    return ShapeConfig::lognormal(j["mu"].get<double>(), j["sigma"].get<double>());
  }
  if (!j.contains("c") || !j.contains("eps")) {
    throw ParseError("power-law shape needs 'c' and 'eps'");
  }
  return ShapeConfig::powerlaw(j["c"].get<double>(), j["eps"].get<double>());
}

json params_to_json(const HawkesParams& params) {
  json j = json::object();
  j["emotions"] = params.emotions.labels();
  j["shape"] = shape_to_json(params.shape);
  json list = json::array();
  for (size_t e = 0; e < params.per_emotion.size(); ++e) {
    list.push_back(emotion_params_to_json(params.emotions, params.per_emotion[e], e));
  }
  j["per_emotion"] = list;
  return j;
}

HawkesParams params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("emotions") || !j.contains("shape") ||
      !j.contains("per_emotion")) {
    throw ParseError("params file needs 'emotions', 'shape' and 'per_emotion'");
  }
  HawkesParams params;
  params.emotions = EmotionSet(j["emotions"].get<std::vector<std::string>>());
  params.shape = shape_from_json(j["shape"]);
  params.per_emotion.resize(params.emotions.size());
  std::vector<bool> seen(params.emotions.size(), false);
  for (const auto& entry : j["per_emotion"]) {
    if (!entry.contains("target")) throw ParseError("per_emotion entry without target");
    const size_t e = params.emotions.index_of(entry["target"].get<std::string>());
    EmotionParams p;
    p.mu0 = entry.at("mu0").get<double>();
    p.gamma = entry.at("gamma").get<double>();
    p.nu = entry.at("nu").get<std::vector<double>>();
    p.alpha = entry.at("alpha").get<std::vector<double>>();
    params.per_emotion[e] = std::move(p);
    seen[e] = true;
  }
  for (size_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) {
      throw ParseError("params file misses label: " + params.emotions.label(e));
    }
  }
  params.validate();
  return params;
}

void write_params_file(const HawkesParams& params, const std::string& path) {
  dump_to_file(params_to_json(params), path);
}

HawkesParams load_params_file(const std::string& path) {
  return params_from_json(load_json_file(path));
}

json fit_result_to_json(const FitResult& result) {
  json j = params_to_json(result.params);

  json loglik = json::object();
  loglik["total"] = result.loglik_total;
  json per_label = json::object();
  for (size_t e = 0; e < result.loglik_per_emotion.size(); ++e) {
    per_label[result.params.emotions.label(e)] = result.loglik_per_emotion[e];
  }
  loglik["per_emotion"] = per_label;
  j["loglik"] = loglik;

  json status = json::object();
  for (size_t e = 0; e < result.status_per_emotion.size(); ++e) {
    status[result.params.emotions.label(e)] = result.status_per_emotion[e];
  }
  j["status"] = status;

  json bootstrap = json::object();
  bootstrap["n"] = result.n_replicas;
  bootstrap["frac"] = result.frac;
  bootstrap["seed"] = result.seed;
  bootstrap["mean"] = params_to_json(result.params)["per_emotion"];
  bootstrap["std"] = params_to_json(result.stddev)["per_emotion"];
  json replicas = json::array();
  for (const auto& replica : result.replicas) {
    json r = json::object();
    r["sessions"] = replica.session_indices;
    json fits = json::array();
    for (size_t e = 0; e < replica.per_emotion.size(); ++e) {
      const auto& fit = replica.per_emotion[e];
      json entry = json::object();
      entry["target"] = result.params.emotions.label(e);
      if (!fit.error.empty()) {
        entry["skipped"] = fit.error;
      } else {
        entry["mu0"] = fit.params.mu0;
        entry["gamma"] = fit.params.gamma;
        entry["nu"] = fit.params.nu;
        entry["alpha"] = fit.params.alpha;
        entry["loglik"] = fit.loglik;
        entry["status"] = optim_status_name(fit.status);
        entry["iterations"] = fit.iterations;
        entry["grad_inf_norm"] = fit.grad_inf_norm;
        entry["n_events"] = fit.n_events;
      }
      fits.push_back(entry);
    }
    r["per_emotion"] = fits;
    replicas.push_back(r);
  }
  bootstrap["replicas"] = replicas;
  j["bootstrap"] = bootstrap;

  json profiles = json::object();
  for (size_t e = 0; e < result.diagnostics.size(); ++e) {
    json points = json::array();
    for (const auto& [gamma, value] : result.diagnostics[e].gamma_profile) {
      points.push_back(json::array({gamma, value}));
    }
    profiles[result.params.emotions.label(e)] = points;
  }
  j["diagnostics"] = json{{"gamma_profile", profiles}};
  return j;
}

void write_fit_report(const FitResult& result, const std::string& path) {
  dump_to_file(fit_result_to_json(result), path);
}

void write_influence_csv(const std::vector<InfluenceRow>& rows,
                         const EmotionSet& emotions, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << "session,label,r_exo_mean,r_endo_mean,r0_mean,r1_mean,n_events\n";
  out << std::setprecision(17);
  for (const auto& row : rows) {
    out << row.session_id << "," << emotions.label(row.label) << "," << row.r_exo_mean
        << "," << row.r_endo_mean << "," << row.r0_mean << "," << row.r1_mean << ","
        << row.n_events << "\n";
  }
}

void write_influence_summary_csv(const std::vector<InfluenceRow>& rows,
                                 const EmotionSet& emotions, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << "label,endo_exo_ratio_of_means,endo_exo_mean_of_ratios,n_sessions\n";
  out << std::setprecision(17);
  for (size_t e = 0; e < emotions.size(); ++e) {
    double exo_sum = 0.0;
    double endo_sum = 0.0;
    double ratio_sum = 0.0;
    size_t n = 0;
    size_t n_ratio = 0;
    for (const auto& row : rows) {
      if (row.label != e || row.n_events == 0) continue;
      exo_sum += row.r_exo_mean;
      endo_sum += row.r_endo_mean;
      ++n;
      if (row.r_exo_mean > 0.0) {
        ratio_sum += row.r_endo_mean / row.r_exo_mean;
        ++n_ratio;
      }
    }
    const double ratio_of_means = exo_sum > 0.0 ? endo_sum / exo_sum : 0.0;
    const double mean_of_ratios =
        n_ratio > 0 ? ratio_sum / static_cast<double>(n_ratio) : 0.0;
    out << emotions.label(e) << "," << ratio_of_means << "," << mean_of_ratios << ","
        << n << "\n";
  }
}

void write_branching_json(const BranchingReport& report, const EmotionSet& emotions,
                          const std::string& path) {
  json j = json::object();
  j["emotions"] = emotions.labels();
  j["column_sums"] = report.column_sums;
  j["spectral_radius"] = report.spectral_radius;
  j["subcritical"] = report.subcritical;
  dump_to_file(j, path);
}

void write_matrix_dump(const HawkesParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  const auto& labels = params.emotions.labels();
  const size_t n = labels.size();
  size_t width = 10;
  for (const auto& label : labels) width = std::max(width, label.size() + 2);

  auto cell = [&](const std::string& text) {
    out << std::setw(static_cast<int>(width)) << text;
  };
  auto value = [&](double v) {
    std::ostringstream tmp;
    tmp << std::setprecision(6) << v;
    cell(tmp.str());
  };
  auto matrix = [&](const char* title, auto&& get) {
    out << "# " << title << "\n";
    cell("");
    for (const auto& label : labels) cell(label);
    out << "\n";
    for (size_t e = 0; e < n; ++e) {
      cell(labels[e]);
      for (size_t f = 0; f < n; ++f) value(get(e, f));
      out << "\n";
    }
    out << "\n";
  };
  auto vector_block = [&](const char* title, auto&& get) {
    out << "# " << title << "\n";
    for (size_t e = 0; e < n; ++e) {
      cell(labels[e]);
      value(get(e));
      out << "\n";
    }
    out << "\n";
  };

  matrix("alpha[target][source]: chat-to-chat excitation",
         [&](size_t e, size_t f) { return params.per_emotion[e].alpha[f]; });
  matrix("nu[target][source]: video-to-chat excitation",
         [&](size_t e, size_t f) { return params.per_emotion[e].nu[f]; });
  vector_block("mu0: spontaneous base rate (events/min)",
               [&](size_t e) { return params.per_emotion[e].mu0; });
  vector_block("gamma: excitation decay time (min)",
               [&](size_t e) { return params.per_emotion[e].gamma; });
}

json recovery_report_to_json(const RecoveryReport& report) {
  json j = json::object();
  j["n_sessions"] = report.n_sessions;
  j["duration"] = report.duration;
  json events = json::object();
  for (size_t e = 0; e < report.events_per_label.size(); ++e) {
    events[report.fit.params.emotions.label(e)] = report.events_per_label[e];
  }
  j["events_per_label"] = events;
  j["passed"] = report.passed;
  json checks = json::array();
  for (const auto& check : report.checks) {
    json entry = json::object();
    entry["name"] = check.name;
    entry["truth"] = check.truth;
    entry["estimate"] = check.estimate;
    entry["stddev"] = check.stddev;
    entry["error_abs"] = check.error_abs;
    entry["error_rel"] = check.error_rel;
    entry["gated"] = check.gated;
    entry["within_tol"] = check.within_tol;
    entry["within_2std"] = check.within_2std;
    checks.push_back(entry);
  }
  j["checks"] = checks;
  j["fit"] = fit_result_to_json(report.fit);
  return j;
}

void write_recovery_report(const RecoveryReport& report, const std::string& path) {
  dump_to_file(recovery_report_to_json(report), path);
}

}  // namespace hawkes
