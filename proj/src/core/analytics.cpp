#include "core/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/likelihood.hpp"

namespace hawkes {

namespace {

struct RatioAccumulator {
  double r_exo_sum = 0.0;
  double r0_sum = 0.0;
  size_t n = 0;
  std::vector<double> r_exo;
  std::vector<double> r0;
  bool keep = false;

  void add(double exo_video, double endo, double mu0) {
    const double exo = mu0 + exo_video;
    const double lambda = exo + endo;
    if (!(lambda > 0.0)) {
      throw NumericError("zero total intensity at an event time");
    }
    const double r_exo_value = exo / lambda;
    if (!(exo > 0.0)) {
      throw NumericError("zero exogenous intensity at an event time");
    }
    const double r0_value = mu0 / exo;
    r_exo_sum += r_exo_value;
    r0_sum += r0_value;
    ++n;
    if (keep) {
      r_exo.push_back(r_exo_value);
      r0.push_back(r0_value);
    }
  }

  InfluenceRow finish(const std::string& session_id, size_t label) {
    InfluenceRow row;
    row.session_id = session_id;
    row.label = label;
    row.n_events = n;
    if (n > 0) {
      // Complements by subtraction, so the per-row identities are exact.
      row.r_exo_mean = r_exo_sum / static_cast<double>(n);
      row.r0_mean = r0_sum / static_cast<double>(n);
      row.r_endo_mean = 1.0 - row.r_exo_mean;
      row.r1_mean = 1.0 - row.r0_mean;
    }
    // A label with no events keeps all means at 0; n_events marks the row.
    row.r_exo = std::move(r_exo);
    row.r0 = std::move(r0);
    return row;
  }
};

}  // namespace

InfluenceReport influence_decomposition(const HawkesParams& params,
                                        const VideoSession& session,
                                        bool keep_per_event) {
  params.validate();
  const size_t n_labels = params.emotions.size();
  const auto data = LikelihoodData::build(session, params.shape);

  InfluenceReport report;
  for (size_t e = 0; e < n_labels; ++e) {
    const auto& p = params.per_emotion[e];
    const auto endo = endo_contributions(data, e, p);
    RatioAccumulator acc;
    acc.keep = keep_per_event;
    for (size_t i = 0; i < endo.size(); ++i) {
      double exo_video = 0.0;
      for (size_t f = 0; f < n_labels; ++f) {
        exo_video += p.nu[f] * data.S_at_chat[e][f][i];
      }
      acc.add(exo_video, endo[i], p.mu0);
    }
    report.rows.push_back(acc.finish(session.id, e));
  }
  return report;
}

InfluenceReport influence_decomposition_grid(const HawkesParams& params,
                                             const VideoSession& session,
                                             double grid_dt) {
  params.validate();
  if (!(grid_dt > 0.0)) throw InvalidArgument("grid step must be > 0");
  const size_t n_labels = params.emotions.size();
  InfluenceReport report;
  for (size_t e = 0; e < n_labels; ++e) {
    const auto& p = params.per_emotion[e];
    RatioAccumulator acc;
    for (double t = grid_dt; t < session.duration; t += grid_dt) {
      double exo_video = 0.0;
      for (size_t f = 0; f < n_labels; ++f) {
        if (p.nu[f] == 0.0) continue;
        exo_video += p.nu[f] * background_S(t, session.subtitles[f], params.shape);
      }
      const double endo = total_intensity(t, e, params, session) - p.mu0 - exo_video;
      acc.add(exo_video, endo, p.mu0);
    }
    report.rows.push_back(acc.finish(session.id, e));
  }
  return report;
}

SpontaneousRatio spontaneous_ratio(const HawkesParams& params,
                                   const VideoSession& session, size_t target) {
  const auto report = influence_decomposition(params, session, true);
  const auto& row = report.rows.at(target);
  SpontaneousRatio out;
  out.r0 = row.r0;
  out.r0_mean = row.r0_mean;
  out.r1_mean = row.r1_mean;
  return out;
}

double spectral_radius(const std::vector<std::vector<double>>& matrix) {
  const size_t n = matrix.size();
  if (n == 0) throw InvalidArgument("spectral radius of empty matrix");
  double max_entry = 0.0;
  for (const auto& row : matrix) {
    if (row.size() != n) throw InvalidArgument("matrix must be square");
    for (double v : row) {
      if (v < 0.0) throw InvalidArgument("branching matrix entries must be >= 0");
      max_entry = std::max(max_entry, v);
    }
  }
  if (max_entry == 0.0) return 0.0;

  // Power iteration on A + shift*I. The positive diagonal removes
  // periodicity, so the iteration converges for any nonnegative matrix; the
  // Perron root of the shifted matrix is rho(A) + shift exactly.
  const double shift = 0.05 * max_entry;
  constexpr double kTol = 1e-10;
  constexpr int kMaxIterations = 10000;

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<double> v(n, 1.0);
    if (attempt > 0) {
      // Restart with a perturbed start vector in case the previous one was
      // (numerically) orthogonal to the dominant eigenvector.
      for (size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * static_cast<double>(i % (attempt + 1));
    }
    double estimate = 0.0;
    int steady = 0;
    std::vector<double> w(n, 0.0);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      double norm = 0.0;
      for (size_t i = 0; i < n; ++i) {
        double sum = shift * v[i];
        for (size_t j = 0; j < n; ++j) sum += matrix[i][j] * v[j];
        w[i] = sum;
        norm += sum * sum;
      }
      norm = std::sqrt(norm);
      if (norm == 0.0) return 0.0;  // start vector annihilated; rho(A) = 0 block
      for (size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
      const double next = norm;
      steady = std::abs(next - estimate) <= kTol * std::max(1.0, next) ? steady + 1 : 0;
      estimate = next;
      if (steady >= 3) return std::max(0.0, estimate - shift);
    }
  }
  throw NumericError("power iteration failed to converge");
}

BranchingReport branching_report(const std::vector<std::vector<double>>& alpha) {
  BranchingReport report;
  report.alpha = alpha;
  const size_t n = alpha.size();
  report.column_sums.assign(n, 0.0);
  for (size_t e = 0; e < n; ++e) {
    if (alpha[e].size() != n) throw InvalidArgument("branching matrix must be square");
    for (size_t f = 0; f < n; ++f) {
      if (alpha[e][f] < 0.0) {
        throw InvalidArgument("branching matrix entries must be >= 0");
      }
      report.column_sums[f] += alpha[e][f];
    }
  }
  report.spectral_radius = spectral_radius(alpha);
  report.subcritical = report.spectral_radius < 1.0;
  return report;
}

std::pair<double, double> ks_test_exp1(std::vector<double> sample) {
  if (sample.empty()) throw InvalidArgument("KS test on empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (size_t i = 0; i < sample.size(); ++i) {
    const double cdf = 1.0 - std::exp(-std::max(sample[i], 0.0));
    const double hi = (static_cast<double>(i) + 1.0) / n - cdf;
    const double lo = cdf - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  // Asymptotic Kolmogorov distribution with the small-sample correction.
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += 2.0 * sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  p = std::clamp(p, 0.0, 1.0);
  return {d, p};
}

ResidualDiagnostics residual_diagnostics(const HawkesParams& params,
                                         const VideoSession& session, size_t target) {
  params.validate();
  const auto& events = session.chat.at(target);
  if (events.size() < 10) {
    throw InvalidArgument("residual diagnostics need at least 10 events");
  }
  const auto compensator_values = compensator_at_events(session, target, params);
  ResidualDiagnostics diag;
  diag.rescaled_gaps.reserve(compensator_values.size());
  double previous = 0.0;
  for (double value : compensator_values) {
    const double gap = value - previous;
    if (gap == 0.0) ++diag.n_zero_gaps;
    diag.rescaled_gaps.push_back(gap);
    previous = value;
  }
  const auto [d, p] = ks_test_exp1(diag.rescaled_gaps);
  diag.ks_statistic = d;
  diag.p_value = p;
  return diag;
}

}  // namespace hawkes
