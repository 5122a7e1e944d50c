#include "core/event_model.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace hawkes {

EmotionSet::EmotionSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("emotion set must hold at least one label");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw InvalidArgument("empty label name");
    if (!index_.emplace(labels_[i], i).second) {
      throw InvalidArgument("duplicate label: " + labels_[i]);
    }
  }
}

EmotionSet EmotionSet::basic6() {
  return EmotionSet({"joy", "surprise", "anger", "disgust", "fear", "sadness"});
}

std::optional<size_t> EmotionSet::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t EmotionSet::index_of(const std::string& label) const {
  auto idx = find(label);
  if (!idx) throw InvalidArgument("unknown label: " + label);
  return *idx;
}

size_t VideoSession::n_chat_events() const {
  size_t n = 0;
  for (const auto& list : chat) n += list.size();
  return n;
}

std::vector<double> VideoSession::pooled_chat_times() const {
  std::vector<double> pooled;
  pooled.reserve(n_chat_events());
  for (const auto& list : chat) pooled.insert(pooled.end(), list.begin(), list.end());
  std::sort(pooled.begin(), pooled.end());
  return pooled;
}

size_t SessionCollection::total_chat_events(size_t label) const {
  size_t n = 0;
  for (const auto& s : sessions) n += s.chat.at(label).size();
  return n;
}

std::string map_extended_label(const std::string& label11) {
  static const std::unordered_map<std::string, std::string> table = {
      {"joy", "joy"},           {"anticipation", "joy"}, {"optimism", "joy"},
      {"love", "joy"},          {"trust", "joy"},        {"sadness", "sadness"},
      {"pessimism", "sadness"}, {"anger", "anger"},      {"disgust", "disgust"},
      {"fear", "fear"},         {"surprise", "surprise"}};
  auto it = table.find(label11);
  if (it == table.end()) throw InvalidArgument("label has no basic-emotion mapping: " + label11);
  return it->second;
}

namespace {

// Median gap of the pooled chat stream; nullopt when fewer than 2 events.
std::optional<double> pooled_median_gap(const VideoSession& session) {
  const auto pooled = session.pooled_chat_times();
  if (pooled.size() < 2) return std::nullopt;
  std::vector<double> gaps;
  gaps.reserve(pooled.size() - 1);
  for (size_t i = 1; i < pooled.size(); ++i) gaps.push_back(pooled[i] - pooled[i - 1]);
  std::sort(gaps.begin(), gaps.end());
  return median_sorted(gaps);
}

double session_rate(const VideoSession& session, size_t label) {
  if (!(session.duration > 0.0)) return 0.0;
  return static_cast<double>(session.chat.at(label).size()) / session.duration;
}

}  // namespace

SessionCollection filter_median_interval(const SessionCollection& collection,
                                         double min_gap, double max_gap) {
  if (!(min_gap < max_gap)) throw InvalidArgument("min_gap must be below max_gap");
  SessionCollection out;
  out.emotions = collection.emotions;
  for (const auto& session : collection.sessions) {
    const auto gap = pooled_median_gap(session);
    if (gap && *gap >= min_gap && *gap <= max_gap) out.sessions.push_back(session);
  }
  return out;
}

SessionCollection filter_rate_quantiles(const SessionCollection& collection, double lo,
                                        double hi, QuantileBounds* bounds_out) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw InvalidArgument("quantile fractions must satisfy 0 <= lo < hi <= 1");
  }
  if (collection.sessions.size() < 2) {
    throw InvalidArgument("rate-quantile filter needs at least two sessions");
  }
  const size_t n_labels = collection.emotions.size();
  QuantileBounds bounds;
  bounds.lo.resize(n_labels);
  bounds.hi.resize(n_labels);
  for (size_t e = 0; e < n_labels; ++e) {
    std::vector<double> rates;
    rates.reserve(collection.sessions.size());
    for (const auto& session : collection.sessions) rates.push_back(session_rate(session, e));
    std::sort(rates.begin(), rates.end());
    bounds.lo[e] = quantile_linear_sorted(rates, lo);
    bounds.hi[e] = quantile_linear_sorted(rates, hi);
  }
  if (bounds_out) *bounds_out = bounds;
  return filter_rate_bounds(collection, bounds);
}

SessionCollection filter_rate_bounds(const SessionCollection& collection,
                                     const QuantileBounds& bounds) {
  const size_t n_labels = collection.emotions.size();
  if (bounds.lo.size() != n_labels || bounds.hi.size() != n_labels) {
    throw InvalidArgument("quantile bounds do not match the emotion set");
  }
  SessionCollection out;
  out.emotions = collection.emotions;
  for (const auto& session : collection.sessions) {
    bool keep = true;
    for (size_t e = 0; e < n_labels && keep; ++e) {
      const double rate = session_rate(session, e);
      keep = rate >= bounds.lo[e] && rate <= bounds.hi[e];
    }
    if (keep) out.sessions.push_back(session);
  }
  return out;
}

CollectionStats summary_stats(const SessionCollection& collection) {
  if (collection.sessions.empty()) throw InvalidArgument("summary of empty collection");
  const size_t n_labels = collection.emotions.size();
  CollectionStats stats;
  std::vector<double> counts;
  std::vector<std::vector<double>> rates(n_labels);
  for (const auto& session : collection.sessions) {
    SessionStats row;
    row.session_id = session.id;
    row.n_messages = session.n_chat_events();
    row.median_gap_min = pooled_median_gap(session).value_or(0.0);
    row.rate_per_label.resize(n_labels);
    for (size_t e = 0; e < n_labels; ++e) {
      row.rate_per_label[e] = session_rate(session, e);
      rates[e].push_back(row.rate_per_label[e]);
    }
    counts.push_back(static_cast<double>(row.n_messages));
    stats.per_session.push_back(std::move(row));
  }
  std::sort(counts.begin(), counts.end());
  stats.median_n_messages = median_sorted(counts);
  stats.median_rate_per_label.resize(n_labels);
  for (size_t e = 0; e < n_labels; ++e) {
    std::sort(rates[e].begin(), rates[e].end());
    stats.median_rate_per_label[e] = median_sorted(rates[e]);
  }
  return stats;
}

}  // namespace hawkes
