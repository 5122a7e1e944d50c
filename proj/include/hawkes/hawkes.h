#ifndef HAWKES_HAWKES_H_
#define HAWKES_HAWKES_H_

/*
 * C API of the hawkes shared library: multivariate self- and cross-exciting
 * point processes over labeled event streams with a time-varying exogenous
 * background driven by subtitle events.
 *
 * Conventions:
 *  - All times and rates are in minutes (events per minute).
 *  - Functions return HAWKES_OK or an error code; hawkes_last_error() gives
 *    the thread-local message of the most recent failure.
 *  - Objects returned through ** out-parameters are owned by the caller and
 *    released with the matching *_free function. Out-parameters are left
 *    untouched on error.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HAWKES_API __declspec(dllexport)
#elif defined(__GNUC__)
#define HAWKES_API __attribute__((visibility("default")))
#else
#define HAWKES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hawkes_status {
  HAWKES_OK = 0,
  HAWKES_ERR_INVALID_ARGUMENT = 1,
  HAWKES_ERR_IO = 2,
  HAWKES_ERR_PARSE = 3,
  HAWKES_ERR_NUMERIC = 4,
  HAWKES_ERR_SUPERCRITICAL = 5,
  HAWKES_ERR_VALIDATION = 6
} hawkes_status;

/* Opaque handles. */
typedef struct hawkes_collection hawkes_collection;
typedef struct hawkes_params hawkes_params;

HAWKES_API const char *hawkes_version(void);
HAWKES_API const char *hawkes_status_name(hawkes_status status);
HAWKES_API const char *hawkes_last_error(void);

/* ---- subtitle influence shape ------------------------------------------ */

typedef enum hawkes_shape_family {
  HAWKES_SHAPE_LOGNORMAL = 0,
  HAWKES_SHAPE_POWERLAW = 1
} hawkes_shape_family;

typedef struct hawkes_shape {
  hawkes_shape_family family;
  double mu;    /* log-normal location (log-minutes) */
  double sigma; /* log-normal scale, > 0 */
  double c;     /* power-law exponent, > 1 */
  double eps;   /* power-law offset (minutes), > 0 */
} hawkes_shape;

/* Log-normal solved from peak 2 s / median 10 s, in minutes. */
HAWKES_API void hawkes_shape_default(hawkes_shape *out);
/* Log-normal solved from arbitrary peak/median times (minutes). */
HAWKES_API hawkes_status hawkes_shape_lognormal(double peak_minutes,
                                                double median_minutes,
                                                hawkes_shape *out);

/* ---- event collections -------------------------------------------------- */

/*
 * Load a line-delimited JSON events file. Each line is either an event
 *   {"session": "...", "t": <min>, "kind": "chat"|"subtitle", "labels": [..]}
 * or a session header
 *   {"session": "...", "kind": "meta", "duration": <min>}.
 * labels/n_labels declare the label universe; NULL uses the six basic
 * emotions. With allow_other_labels == 0 an unknown label is a parse error,
 * otherwise records are projected onto the declared set.
 */
HAWKES_API hawkes_status hawkes_collection_load(const char *path,
                                                const char *const *labels,
                                                size_t n_labels,
                                                int allow_other_labels,
                                                int clip_to_subtitle_window,
                                                hawkes_collection **out);
HAWKES_API hawkes_status hawkes_collection_save(const hawkes_collection *c,
                                                const char *path);

/* Keep sessions whose pooled median inter-message gap lies in
 * [min_gap, max_gap] minutes. */
HAWKES_API hawkes_status hawkes_collection_filter_median_interval(
    const hawkes_collection *c, double min_gap_min, double max_gap_min,
    hawkes_collection **out);

/* Keep sessions whose per-label rate lies within the [lo, hi] quantiles
 * (linear interpolation) for every label. bounds_lo/bounds_hi, when non-NULL,
 * receive the applied per-label bounds (length = label count). */
HAWKES_API hawkes_status hawkes_collection_filter_rate_quantiles(
    const hawkes_collection *c, double lo, double hi, double *bounds_lo,
    double *bounds_hi, hawkes_collection **out);

HAWKES_API hawkes_status hawkes_collection_write_stats(const hawkes_collection *c,
                                                       const char *csv_path);

HAWKES_API size_t hawkes_collection_n_sessions(const hawkes_collection *c);
HAWKES_API size_t hawkes_collection_n_labels(const hawkes_collection *c);
/* Label name by index; NULL when out of range. */
HAWKES_API const char *hawkes_collection_label(const hawkes_collection *c,
                                               size_t index);
/* Total chat events of one label, or of all labels when label is NULL. */
HAWKES_API size_t hawkes_collection_n_events(const hawkes_collection *c,
                                             const char *label);
HAWKES_API void hawkes_collection_free(hawkes_collection *c);

/* ---- model parameters ---------------------------------------------------- */

HAWKES_API hawkes_status hawkes_params_load(const char *path, hawkes_params **out);
HAWKES_API hawkes_status hawkes_params_save(const hawkes_params *p, const char *path);
HAWKES_API size_t hawkes_params_n_labels(const hawkes_params *p);
HAWKES_API const char *hawkes_params_label(const hawkes_params *p, size_t index);
/* Spectral radius of the branching (alpha) matrix. */
HAWKES_API hawkes_status hawkes_params_spectral_radius(const hawkes_params *p,
                                                       double *rho);
HAWKES_API void hawkes_params_free(hawkes_params *p);

/* ---- fitting ------------------------------------------------------------- */

typedef struct hawkes_fit_options {
  int n_replicas;     /* subsample fits aggregated into mean/std (default 10) */
  double frac;        /* session fraction per replica, no replacement (0.6) */
  int n_starts;       /* multi-start count per optimization (3) */
  int max_iterations; /* per start (500) */
  double grad_tol;    /* projected-gradient stop (1e-6) */
  double value_tol;   /* value-change stagnation stop (1e-9) */
  uint64_t seed;
  int threads;        /* <= 0: hardware count */
} hawkes_fit_options;

HAWKES_API void hawkes_fit_options_default(hawkes_fit_options *out);

/*
 * Maximum-likelihood fit of every label over the collection, by bounded
 * quasi-Newton with analytic gradients, repeated over n_replicas session
 * subsamples. params_out receives the per-parameter replica means; the full
 * replica detail is written to report_path (JSON) when non-NULL. A label
 * whose every replica failed (e.g. no events) counts into *n_failed_labels
 * (may be NULL); such per-label failures are recorded, not errors.
 */
HAWKES_API hawkes_status hawkes_fit(const hawkes_collection *c,
                                    const hawkes_shape *shape,
                                    const hawkes_fit_options *options,
                                    const char *report_path,
                                    hawkes_params **params_out,
                                    size_t *n_failed_labels);

/* Summed log-likelihood of one label over the collection; normalized (by
 * event count) may be NULL. */
HAWKES_API hawkes_status hawkes_loglik(const hawkes_params *p,
                                       const hawkes_collection *c,
                                       const char *label, double *value,
                                       double *normalized);

/* ---- simulation ----------------------------------------------------------- */

typedef struct hawkes_sim_options {
  double duration;  /* minutes per session */
  size_t n_sessions;
  /* Homogeneous Poisson subtitle rates: n_subtitle_rates == 0 for none,
   * == 1 for one shared rate, or one rate per label. */
  const double *subtitle_rates;
  size_t n_subtitle_rates;
  uint64_t seed;
  size_t max_events; /* runaway guard per session */
} hawkes_sim_options;

HAWKES_API void hawkes_sim_options_default(hawkes_sim_options *out);

/* Draw sessions from the model by thinning. Fails with
 * HAWKES_ERR_SUPERCRITICAL when a session exceeds max_events. */
HAWKES_API hawkes_status hawkes_simulate(const hawkes_params *p,
                                         const hawkes_sim_options *options,
                                         hawkes_collection **out);

/* ---- analytics ------------------------------------------------------------ */

/*
 * Post-fit reports; any path may be NULL to skip that output.
 *   influence_csv: per (session, label) endo/exo and spontaneous/video means
 *   summary_csv:   corpus-level endo/exo dominance per label, both as ratio
 *                  of means and mean of ratios
 *   branching_json: column sums, spectral radius, subcritical flag
 *   matrices_txt:  labeled alpha/nu/mu0/gamma grids
 */
HAWKES_API hawkes_status hawkes_analyze(const hawkes_params *p,
                                        const hawkes_collection *c,
                                        const char *influence_csv,
                                        const char *summary_csv,
                                        const char *branching_json,
                                        const char *matrices_txt);

/* Influence decomposition sampled on a uniform time grid instead of event
 * times (sensitivity mode). */
HAWKES_API hawkes_status hawkes_analyze_grid(const hawkes_params *p,
                                             const hawkes_collection *c,
                                             double grid_dt,
                                             const char *influence_csv);

/* Time-rescaling goodness of fit for one label of one session:
 * Kolmogorov-Smirnov statistic and p-value of the compensator increments
 * against the unit exponential. Needs >= 10 events of the label. */
HAWKES_API hawkes_status hawkes_residual_ks(const hawkes_params *p,
                                            const hawkes_collection *c,
                                            size_t session_index,
                                            const char *label,
                                            double *ks_statistic,
                                            double *p_value);

/* ---- ground-truth validation ---------------------------------------------- */

typedef struct hawkes_validate_options {
  size_t n_sessions;
  double duration;
  double subtitle_rate; /* shared across labels */
  hawkes_fit_options fit;
  /* Recovery tolerances; *_floor entries exclude tiny true values from the
   * pass/fail gate. */
  double alpha_floor;
  double tol_alpha_rel;
  double tol_alpha_abs;
  double tol_mu0_rel;
  double nu_floor;
  double tol_nu_rel;
  double tol_gamma_rel;
} hawkes_validate_options;

HAWKES_API void hawkes_validate_options_default(hawkes_validate_options *out);

/* Simulate a corpus from truth, refit, compare against tolerances. *passed
 * is 1 when every gated parameter is recovered. A JSON report is written to
 * report_path when non-NULL. */
HAWKES_API hawkes_status hawkes_validate(const hawkes_params *truth,
                                         const hawkes_validate_options *options,
                                         const char *report_path, int *passed);

#ifdef __cplusplus
}
#endif

#endif /* HAWKES_HAWKES_H_ */
