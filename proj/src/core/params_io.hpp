#pragma once

#include <string>

#include <json.hpp>

#include "core/analytics.hpp"
#include "core/simulator.hpp"

namespace hawkes {

// Params file: {"emotions": [...], "shape": {...}, "per_emotion": [{"target",
// "mu0", "gamma", "nu": [...], "alpha": [...]}]}. nu/alpha are indexed by
// source label in emotions order.
nlohmann::json params_to_json(const HawkesParams& params);
HawkesParams params_from_json(const nlohmann::json& j);
void write_params_file(const HawkesParams& params, const std::string& path);
HawkesParams load_params_file(const std::string& path);

nlohmann::json shape_to_json(const ShapeConfig& shape);
ShapeConfig shape_from_json(const nlohmann::json& j);

// Fit report: the params-file fields plus loglik, per-label status, replica
// detail, and the gamma profiles.
nlohmann::json fit_result_to_json(const FitResult& result);
void write_fit_report(const FitResult& result, const std::string& path);

// Influence table: one row per (session, label).
void write_influence_csv(const std::vector<InfluenceRow>& rows,
                         const EmotionSet& emotions, const std::string& path);

// Corpus-level endo/exo dominance per label, computed both as the ratio of
// mean ratios and as the mean of per-session ratios; the two disagree in
// general, so both are emitted under explicit names.
void write_influence_summary_csv(const std::vector<InfluenceRow>& rows,
                                 const EmotionSet& emotions, const std::string& path);

void write_branching_json(const BranchingReport& report, const EmotionSet& emotions,
                          const std::string& path);

// Plot-ready labeled grids of alpha, nu, mu0, gamma in emotion-set order.
void write_matrix_dump(const HawkesParams& params, const std::string& path);

nlohmann::json recovery_report_to_json(const RecoveryReport& report);
void write_recovery_report(const RecoveryReport& report, const std::string& path);

}  // namespace hawkes
