// Command-line front end over the hawkes C API: prepare, fit, simulate,
// analyze, and validate workflows with reproducible configs.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hawkes/hawkes.h"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 2 validation failure, 3 input error, 4 numerical
// failure.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumeric = 4;

int exit_code(hawkes_status status) {
  switch (status) {
    case HAWKES_OK: return kExitOk;
    case HAWKES_ERR_VALIDATION: return kExitValidation;
    case HAWKES_ERR_INVALID_ARGUMENT:
    case HAWKES_ERR_IO:
    case HAWKES_ERR_PARSE: return kExitInput;
    case HAWKES_ERR_NUMERIC:
    case HAWKES_ERR_SUPERCRITICAL: return kExitNumeric;
  }
  return kExitNumeric;
}

// Fails the current command when a library call errored.
[[nodiscard]] bool ok_or_report(hawkes_status status, const char* what) {
  if (status == HAWKES_OK) return true;
  std::cerr << "error: " << what << ": " << hawkes_status_name(status) << ": "
            << hawkes_last_error() << "\n";
  return false;
}

struct CollectionHandle {
  hawkes_collection* ptr = nullptr;
  ~CollectionHandle() { hawkes_collection_free(ptr); }
};

struct ParamsHandle {
  hawkes_params* ptr = nullptr;
  ~ParamsHandle() { hawkes_params_free(ptr); }
};

std::vector<const char*> c_labels(const std::vector<std::string>& labels) {
  std::vector<const char*> out;
  out.reserve(labels.size());
  for (const auto& label : labels) out.push_back(label.c_str());
  return out;
}

struct GlobalOptions {
  uint64_t seed = 42;
  int threads = 0;
  std::string out_dir = ".";
};

struct ShapeOptions {
  std::string family = "lognormal";
  double peak_seconds = 2.0;
  double median_seconds = 10.0;
  double powerlaw_c = 2.5;
  double powerlaw_eps = 1.0 / 60.0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--shape", family, "Subtitle influence shape family")
        ->check(CLI::IsMember({"lognormal", "powerlaw"}))
        ->capture_default_str();
    cmd->add_option("--peak-seconds", peak_seconds,
                    "Log-normal mode (seconds after the subtitle)")
        ->capture_default_str();
    cmd->add_option("--median-seconds", median_seconds,
                    "Log-normal median (seconds after the subtitle)")
        ->capture_default_str();
    cmd->add_option("--powerlaw-c,--c", powerlaw_c, "Power-law exponent")
        ->capture_default_str();
    cmd->add_option("--powerlaw-eps,--eps", powerlaw_eps, "Power-law offset (minutes)")
        ->capture_default_str();
  }

  bool build(hawkes_shape* shape) const {
    if (family == "lognormal") {
      return ok_or_report(hawkes_shape_lognormal(peak_seconds / 60.0,
                                                 median_seconds / 60.0, shape),
                          "shape");
    }
    shape->family = HAWKES_SHAPE_POWERLAW;
    shape->mu = 0.0;
    shape->sigma = 1.0;
    shape->c = powerlaw_c;
    shape->eps = powerlaw_eps;
    return true;
  }
};

struct FitFlagOptions {
  int bootstrap = 10;
  double frac = 0.6;
  int starts = 3;
  int max_iterations = 500;
  double grad_tol = 1e-6;
  double value_tol = 1e-9;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--bootstrap", bootstrap, "Replica fits on session subsamples")
        ->capture_default_str();
    cmd->add_option("--frac", frac, "Session fraction per replica (no replacement)")
        ->capture_default_str();
    cmd->add_option("--starts", starts, "Multi-start count per optimization")
        ->capture_default_str();
    cmd->add_option("--max-iter", max_iterations, "Iteration cap per start")
        ->capture_default_str();
    cmd->add_option("--grad-tol", grad_tol, "Projected-gradient stopping norm")
        ->capture_default_str();
    cmd->add_option("--value-tol", value_tol, "Value-change stagnation threshold")
        ->capture_default_str();
  }

  hawkes_fit_options build(const GlobalOptions& global) const {
    hawkes_fit_options options;
    hawkes_fit_options_default(&options);
    options.n_replicas = bootstrap;
    options.frac = frac;
    options.n_starts = starts;
    options.max_iterations = max_iterations;
    options.grad_tol = grad_tol;
    options.value_tol = value_tol;
    options.seed = global.seed;
    options.threads = global.threads;
    return options;
  }
};

std::string in_out_dir(const GlobalOptions& global, const std::string& name) {
  return (fs::path(global.out_dir) / name).string();
}

// ---- prepare ----------------------------------------------------------------

struct PrepareOptions {
  std::string events_in;
  std::string events_out;
  std::string stats_out;
  std::string report_out;
  std::vector<std::string> emotions;
  bool allow_other_labels = false;
  bool clip_to_subtitles = false;
  bool no_filters = false;
  double min_gap = 1.0 / 60.0;
  double max_gap = 5.0;
  double q_lo = 0.2;
  double q_hi = 0.8;
};

int run_prepare(const GlobalOptions& global, const PrepareOptions& opt) {
  (void)global;
  CollectionHandle raw;
  const auto labels = c_labels(opt.emotions);
  if (!ok_or_report(hawkes_collection_load(opt.events_in.c_str(),
                                           labels.empty() ? nullptr : labels.data(),
                                           labels.size(), opt.allow_other_labels,
                                           opt.clip_to_subtitles, &raw.ptr),
                    "load events")) {
    return kExitInput;
  }
  const size_t n_raw = hawkes_collection_n_sessions(raw.ptr);
  const size_t n_labels = hawkes_collection_n_labels(raw.ptr);

  CollectionHandle median_kept;
  CollectionHandle final_kept;
  std::vector<double> bounds_lo(n_labels, 0.0), bounds_hi(n_labels, 0.0);
  const hawkes_collection* result = raw.ptr;
  size_t n_median = n_raw;
  bool quantiles_applied = false;

  if (!opt.no_filters) {
    if (!ok_or_report(hawkes_collection_filter_median_interval(
                          raw.ptr, opt.min_gap, opt.max_gap, &median_kept.ptr),
                      "median-interval filter")) {
      return kExitInput;
    }
    n_median = hawkes_collection_n_sessions(median_kept.ptr);
    if (n_median == 0) {
      std::cerr << "error: median-interval filter removed every session\n";
      return kExitValidation;
    }
    const auto status = hawkes_collection_filter_rate_quantiles(
        median_kept.ptr, opt.q_lo, opt.q_hi, bounds_lo.data(), bounds_hi.data(),
        &final_kept.ptr);
    if (!ok_or_report(status, "rate-quantile filter")) return exit_code(status);
    quantiles_applied = true;
    result = final_kept.ptr;
  }

  const size_t n_final = hawkes_collection_n_sessions(result);
  if (n_final == 0) {
    std::cerr << "error: filters removed every session; nothing to write\n";
    return kExitValidation;
  }
  if (!ok_or_report(hawkes_collection_save(result, opt.events_out.c_str()),
                    "write events")) {
    return kExitInput;
  }
  if (!ok_or_report(hawkes_collection_write_stats(result, opt.stats_out.c_str()),
                    "write stats")) {
    return kExitInput;
  }

  std::ofstream report(opt.report_out);
  report << "sessions_in: " << n_raw << "\n";
  report << "sessions_after_median_filter: " << n_median << "\n";
  report << "sessions_out: " << n_final << "\n";
  report << "median_gap_bounds_min: [" << opt.min_gap << ", " << opt.max_gap << "]\n";
  if (quantiles_applied) {
    report << "rate_quantiles: [" << opt.q_lo << ", " << opt.q_hi
           << "] (linear interpolation of order statistics)\n";
    for (size_t e = 0; e < n_labels; ++e) {
      report << "rate_bounds_" << hawkes_collection_label(result, e) << ": ["
             << bounds_lo[e] << ", " << bounds_hi[e] << "]\n";
    }
  } else {
    report << "filters: disabled (pass-through copy)\n";
  }

  std::cout << "prepare: " << n_raw << " -> " << n_final << " sessions; events "
            << hawkes_collection_n_events(result, nullptr) << "; wrote "
            << opt.events_out << "\n";
  return kExitOk;
}

// ---- fit ----------------------------------------------------------------------

struct FitCmdOptions {
  std::string events_in;
  std::string params_out;
  std::string report_out;
  std::vector<std::string> emotions;
  bool allow_other_labels = false;
  bool clip_to_subtitles = false;
  ShapeOptions shape;
  FitFlagOptions fit;
};

int run_fit(const GlobalOptions& global, const FitCmdOptions& opt) {
  CollectionHandle collection;
  const auto labels = c_labels(opt.emotions);
  if (!ok_or_report(hawkes_collection_load(opt.events_in.c_str(),
                                           labels.empty() ? nullptr : labels.data(),
                                           labels.size(), opt.allow_other_labels,
                                           opt.clip_to_subtitles, &collection.ptr),
                    "load events")) {
    return kExitInput;
  }
  hawkes_shape shape;
  if (!opt.shape.build(&shape)) return kExitInput;
  const auto options = opt.fit.build(global);

  ParamsHandle params;
  size_t n_failed = 0;
  const auto status = hawkes_fit(collection.ptr, &shape, &options,
                                 opt.report_out.c_str(), &params.ptr, &n_failed);
  if (!ok_or_report(status, "fit")) return exit_code(status);
  if (!ok_or_report(hawkes_params_save(params.ptr, opt.params_out.c_str()),
                    "write params")) {
    return kExitInput;
  }

  const size_t n_labels = hawkes_params_n_labels(params.ptr);
  double rho = 0.0;
  (void)hawkes_params_spectral_radius(params.ptr, &rho);
  std::cout << "fit: " << hawkes_collection_n_sessions(collection.ptr)
            << " sessions, " << hawkes_collection_n_events(collection.ptr, nullptr)
            << " events, spectral radius " << rho << "; wrote " << opt.params_out
            << "\n";
  if (n_failed == n_labels) {
    std::cerr << "error: no label could be fitted\n";
    return kExitNumeric;
  }
  if (n_failed > 0) {
    std::cerr << "warning: " << n_failed
              << " label(s) produced no estimate; see " << opt.report_out << "\n";
  }
  return kExitOk;
}

// ---- simulate -------------------------------------------------------------------

struct SimulateOptions {
  std::string params_in;
  std::string events_out;
  size_t n_sessions = 50;
  double duration = 120.0;
  std::vector<double> subtitle_rates{1.0};
  size_t max_events = 1000000;
};

int run_simulate(const GlobalOptions& global, const SimulateOptions& opt) {
  ParamsHandle params;
  if (!ok_or_report(hawkes_params_load(opt.params_in.c_str(), &params.ptr),
                    "load params")) {
    return kExitInput;
  }
  hawkes_sim_options sim;
  hawkes_sim_options_default(&sim);
  sim.duration = opt.duration;
  sim.n_sessions = opt.n_sessions;
  sim.subtitle_rates = opt.subtitle_rates.data();
  sim.n_subtitle_rates = opt.subtitle_rates.size();
  sim.seed = global.seed;
  sim.max_events = opt.max_events;

  CollectionHandle out;
  const auto status = hawkes_simulate(params.ptr, &sim, &out.ptr);
  if (!ok_or_report(status, "simulate")) return exit_code(status);
  if (!ok_or_report(hawkes_collection_save(out.ptr, opt.events_out.c_str()),
                    "write events")) {
    return kExitInput;
  }
  std::cout << "simulate: " << opt.n_sessions << " sessions, "
            << hawkes_collection_n_events(out.ptr, nullptr) << " chat events; wrote "
            << opt.events_out << "\n";
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------------

struct AnalyzeOptions {
  std::string params_in;
  std::string events_in;
  std::string influence_out;
  std::string summary_out;
  std::string branching_out;
  std::string matrices_out;
  double grid_dt = 0.0;
  std::string grid_out;
};

int run_analyze(const GlobalOptions& global, const AnalyzeOptions& opt) {
  (void)global;
  ParamsHandle params;
  if (!ok_or_report(hawkes_params_load(opt.params_in.c_str(), &params.ptr),
                    "load params")) {
    return kExitInput;
  }
  // The events file must use exactly the params' label universe; anything
  // else is a mismatch surfaced at parse time.
  std::vector<std::string> labels;
  for (size_t e = 0; e < hawkes_params_n_labels(params.ptr); ++e) {
    labels.push_back(hawkes_params_label(params.ptr, e));
  }
  const auto label_ptrs = c_labels(labels);
  CollectionHandle collection;
  if (!ok_or_report(hawkes_collection_load(opt.events_in.c_str(), label_ptrs.data(),
                                           label_ptrs.size(), 0, 0, &collection.ptr),
                    "load events")) {
    return kExitInput;
  }
  const auto status = hawkes_analyze(params.ptr, collection.ptr,
                                     opt.influence_out.c_str(), opt.summary_out.c_str(),
                                     opt.branching_out.c_str(),
                                     opt.matrices_out.c_str());
  if (!ok_or_report(status, "analyze")) return exit_code(status);
  if (opt.grid_dt > 0.0) {
    const auto grid_status = hawkes_analyze_grid(params.ptr, collection.ptr,
                                                 opt.grid_dt, opt.grid_out.c_str());
    if (!ok_or_report(grid_status, "grid analyze")) return exit_code(grid_status);
  }
  double rho = 0.0;
  (void)hawkes_params_spectral_radius(params.ptr, &rho);
  std::cout << "analyze: " << hawkes_collection_n_sessions(collection.ptr)
            << " sessions; spectral radius " << rho << "; wrote "
            << opt.influence_out << ", " << opt.branching_out << "\n";
  return kExitOk;
}

// ---- validate --------------------------------------------------------------------

struct ValidateOptions {
  std::string params_in;
  std::string report_out;
  size_t n_sessions = 50;
  double duration = 120.0;
  double subtitle_rate = 1.0;
  bool quick = false;
  FitFlagOptions fit;
  double alpha_floor = 0.1;
  double tol_alpha_rel = 0.20;
  double tol_alpha_abs = 0.05;
  double tol_mu0_rel = 0.15;
  double nu_floor = 0.1;
  double tol_nu_rel = 0.30;
  double tol_gamma_rel = 0.50;
};

int run_validate(const GlobalOptions& global, const ValidateOptions& opt) {
  ParamsHandle truth;
  if (!ok_or_report(hawkes_params_load(opt.params_in.c_str(), &truth.ptr),
                    "load params")) {
    return kExitInput;
  }
  hawkes_validate_options options;
  hawkes_validate_options_default(&options);
  options.n_sessions = opt.n_sessions;
  options.duration = opt.duration;
  options.subtitle_rate = opt.subtitle_rate;
  options.fit = opt.fit.build(global);
  if (opt.quick) {
    options.n_sessions = 5;
    options.duration = 30.0;
    options.fit.n_replicas = 2;
    options.fit.frac = 1.0;
    options.fit.n_starts = 1;
  }
  options.alpha_floor = opt.alpha_floor;
  options.tol_alpha_rel = opt.tol_alpha_rel;
  options.tol_alpha_abs = opt.tol_alpha_abs;
  options.tol_mu0_rel = opt.tol_mu0_rel;
  options.nu_floor = opt.nu_floor;
  options.tol_nu_rel = opt.tol_nu_rel;
  options.tol_gamma_rel = opt.tol_gamma_rel;

  int passed = 0;
  const auto status =
      hawkes_validate(truth.ptr, &options, opt.report_out.c_str(), &passed);
  if (!ok_or_report(status, "validate")) return exit_code(status);

  if (passed) {
    std::cout << "validate: PASS; report at " << opt.report_out << "\n";
    return kExitOk;
  }
  std::cout << "validate: FAIL; gated parameters out of tolerance:\n";
  std::ifstream in(opt.report_out);
  const auto report = nlohmann::json::parse(in, nullptr, false);
  if (!report.is_discarded()) {
    for (const auto& check : report.value("checks", nlohmann::json::array())) {
      if (check.value("gated", false) && !check.value("within_tol", true)) {
        std::printf("  %-24s truth %-10.5g estimate %-10.5g rel err %.3g\n",
                    check.value("name", std::string("?")).c_str(),
                    check.value("truth", 0.0), check.value("estimate", 0.0),
                    check.value("error_rel", 0.0));
      }
    }
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate self-exciting point processes over labeled event "
               "streams: filtering, exact-likelihood fitting, simulation, and "
               "endo/exo analytics"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may also follow the subcommand
  app.set_config("--config", "", "Read options from an INI file");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Root seed for every random sub-stream")
      ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker cap for parallel fits (0 = hardware)")
      ->capture_default_str();
  app.add_option("--out", global.out_dir, "Output directory")->capture_default_str();

  PrepareOptions prepare;
  auto* prepare_cmd =
      app.add_subcommand("prepare", "Filter an events file and emit stats");
  prepare_cmd->add_option("--events", prepare.events_in, "Input events file (JSONL)")
      ->required();
  prepare_cmd->add_option("--out-events", prepare.events_out, "Filtered events file");
  prepare_cmd->add_option("--stats", prepare.stats_out, "Stats CSV path");
  prepare_cmd->add_option("--report", prepare.report_out, "Filter report path");
  prepare_cmd
      ->add_option("--emotions", prepare.emotions,
                   "Label universe (default: the six basic emotions)")
      ->delimiter(',');
  prepare_cmd->add_flag("--allow-other-labels", prepare.allow_other_labels,
                        "Project records onto the label set instead of failing");
  prepare_cmd->add_flag("--clip-to-subtitles", prepare.clip_to_subtitles,
                        "Drop chat before the first / after the last subtitle");
  prepare_cmd->add_flag("--no-filters", prepare.no_filters, "Pass-through copy");
  prepare_cmd->add_option("--min-gap", prepare.min_gap,
                          "Median-gap lower bound (minutes)")
      ->capture_default_str();
  prepare_cmd->add_option("--max-gap", prepare.max_gap,
                          "Median-gap upper bound (minutes)")
      ->capture_default_str();
  prepare_cmd->add_option("--q-lo", prepare.q_lo, "Lower rate quantile")
      ->capture_default_str();
  prepare_cmd->add_option("--q-hi", prepare.q_hi, "Upper rate quantile")
      ->capture_default_str();

  FitCmdOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood model fit");
  fit_cmd->add_option("--events", fit.events_in, "Input events file (JSONL)")
      ->required();
  fit_cmd->add_option("--params-out", fit.params_out, "Fitted params file");
  fit_cmd->add_option("--report", fit.report_out, "Fit report file");
  fit_cmd->add_option("--emotions", fit.emotions, "Label universe")->delimiter(',');
  fit_cmd->add_flag("--allow-other-labels", fit.allow_other_labels,
                    "Project records onto the label set instead of failing");
  fit_cmd->add_flag("--clip-to-subtitles", fit.clip_to_subtitles,
                    "Drop chat before the first / after the last subtitle");
  fit.shape.add_flags(fit_cmd);
  fit.fit.add_flags(fit_cmd);

  SimulateOptions simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw synthetic sessions");
  sim_cmd->add_option("--params", simulate.params_in, "Model params file")->required();
  sim_cmd->add_option("--out-events", simulate.events_out, "Output events file");
  sim_cmd->add_option("--sessions", simulate.n_sessions, "Session count")
      ->capture_default_str();
  sim_cmd->add_option("--duration", simulate.duration, "Session length (minutes)")
      ->capture_default_str();
  sim_cmd
      ->add_option("--subtitle-rate", simulate.subtitle_rates,
                   "Subtitle Poisson rate(s): one shared or one per label")
      ->delimiter(',')
      ->capture_default_str();
  sim_cmd->add_option("--max-events", simulate.max_events,
                      "Runaway guard per session")
      ->capture_default_str();

  AnalyzeOptions analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Endo/exo decomposition and branching reports");
  analyze_cmd->add_option("--params", analyze.params_in, "Model params file")
      ->required();
  analyze_cmd->add_option("--events", analyze.events_in, "Events file (JSONL)")
      ->required();
  analyze_cmd->add_option("--influence", analyze.influence_out, "Influence CSV");
  analyze_cmd->add_option("--summary", analyze.summary_out, "Influence summary CSV");
  analyze_cmd->add_option("--branching", analyze.branching_out, "Branching JSON");
  analyze_cmd->add_option("--matrices", analyze.matrices_out, "Matrix dump");
  analyze_cmd
      ->add_option("--grid-dt", analyze.grid_dt,
                   "Also decompose on a uniform grid with this step (minutes)")
      ->capture_default_str();
  analyze_cmd->add_option("--grid-out", analyze.grid_out, "Grid influence CSV");

  ValidateOptions validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Simulate from truth, refit, check recovery");
  validate_cmd->add_option("--params", validate.params_in, "Ground-truth params file")
      ->required();
  validate_cmd->add_option("--report", validate.report_out, "Recovery report file");
  validate_cmd->add_option("--sessions", validate.n_sessions, "Session count")
      ->capture_default_str();
  validate_cmd->add_option("--duration", validate.duration, "Session length (minutes)")
      ->capture_default_str();
  validate_cmd->add_option("--subtitle-rate", validate.subtitle_rate,
                           "Subtitle Poisson rate per label")
      ->capture_default_str();
  validate_cmd->add_flag("--quick", validate.quick,
                         "Smoke mode: 5 sessions, T=30, light fit");
  validate.fit.add_flags(validate_cmd);
  validate_cmd->add_option("--alpha-floor", validate.alpha_floor,
                           "Gate alpha entries with truth >= this")
      ->capture_default_str();
  validate_cmd->add_option("--tol-alpha-rel", validate.tol_alpha_rel)
      ->capture_default_str();
  validate_cmd->add_option("--tol-alpha-abs", validate.tol_alpha_abs)
      ->capture_default_str();
  validate_cmd->add_option("--tol-mu0-rel", validate.tol_mu0_rel)
      ->capture_default_str();
  validate_cmd->add_option("--nu-floor", validate.nu_floor,
                           "Gate nu entries with truth >= this")
      ->capture_default_str();
  validate_cmd->add_option("--tol-nu-rel", validate.tol_nu_rel)->capture_default_str();
  validate_cmd->add_option("--tol-gamma-rel", validate.tol_gamma_rel)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::error_code ec;
  fs::create_directories(global.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << global.out_dir << "\n";
    return kExitInput;
  }

  // Default output paths land next to each other in --out.
  if (prepare.events_out.empty())
    prepare.events_out = in_out_dir(global, "prepared_events.jsonl");
  if (prepare.stats_out.empty()) prepare.stats_out = in_out_dir(global, "stats.csv");
  if (prepare.report_out.empty())
    prepare.report_out = in_out_dir(global, "prepare_report.txt");
  if (fit.params_out.empty()) fit.params_out = in_out_dir(global, "params.json");
  if (fit.report_out.empty()) fit.report_out = in_out_dir(global, "fit_report.json");
  if (simulate.events_out.empty())
    simulate.events_out = in_out_dir(global, "simulated_events.jsonl");
  if (analyze.influence_out.empty())
    analyze.influence_out = in_out_dir(global, "influence.csv");
  if (analyze.summary_out.empty())
    analyze.summary_out = in_out_dir(global, "influence_summary.csv");
  if (analyze.branching_out.empty())
    analyze.branching_out = in_out_dir(global, "branching.json");
  if (analyze.matrices_out.empty())
    analyze.matrices_out = in_out_dir(global, "matrices.txt");
  if (analyze.grid_out.empty())
    analyze.grid_out = in_out_dir(global, "influence_grid.csv");
  if (validate.report_out.empty())
    validate.report_out = in_out_dir(global, "recovery_report.json");

  // Reproducibility record: the fully resolved configuration of this run.
  {
    std::ofstream resolved(in_out_dir(global, "resolved_config.ini"));
    resolved << app.config_to_str(true, true);
  }

  if (prepare_cmd->parsed()) return run_prepare(global, prepare);
  if (fit_cmd->parsed()) return run_fit(global, fit);
  if (sim_cmd->parsed()) return run_simulate(global, simulate);
  if (analyze_cmd->parsed()) return run_analyze(global, analyze);
  if (validate_cmd->parsed()) return run_validate(global, validate);
  return kExitInput;
}
