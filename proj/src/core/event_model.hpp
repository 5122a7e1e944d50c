#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hawkes {

// Ordered universe of event labels. The order is fixed for the lifetime of a
// dataset: label index i is the row/column i of every parameter matrix.
class EmotionSet {
public:
  EmotionSet() = default;
  explicit EmotionSet(std::vector<std::string> labels);

  // joy, surprise, anger, disgust, fear, sadness
  static EmotionSet basic6();

  size_t size() const { return labels_.size(); }
  const std::string& label(size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<size_t> find(const std::string& label) const;
  size_t index_of(const std::string& label) const;  // throws InvalidArgument

  bool operator==(const EmotionSet& other) const { return labels_ == other.labels_; }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, size_t> index_;
};

// One session: per-label sorted chat event times and subtitle event times,
// in minutes from the session start, all within [0, duration]. A message
// carrying k labels contributes one time to each of the k chat lists.
struct VideoSession {
  std::string id;
  double duration = 0.0;
  std::vector<std::vector<double>> chat;       // [label][event]
  std::vector<std::vector<double>> subtitles;  // [label][event]

  size_t n_chat_events() const;
  size_t n_chat_events(size_t label) const { return chat.at(label).size(); }
  // All chat times across labels merged into one sorted list.
  std::vector<double> pooled_chat_times() const;
};

struct SessionCollection {
  EmotionSet emotions;
  std::vector<VideoSession> sessions;

  size_t total_chat_events(size_t label) const;
};

struct SessionStats {
  std::string session_id;
  size_t n_messages = 0;          // pooled chat event count
  double median_gap_min = 0.0;    // pooled inter-event gap; 0 when < 2 events
  std::vector<double> rate_per_label;  // events per minute, N^e / T
};

struct CollectionStats {
  std::vector<SessionStats> per_session;
  double median_n_messages = 0.0;
  std::vector<double> median_rate_per_label;
};

// Per-label bounds actually applied by the rate-quantile filter, reported so
// the interpolation rule is visible in output.
struct QuantileBounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

// Map one of the 11 extended labels onto the 6 basic ones.
std::string map_extended_label(const std::string& label11);

// Keep sessions whose pooled median inter-event gap lies in [min_gap, max_gap]
// minutes. Sessions with fewer than two chat events are dropped.
SessionCollection filter_median_interval(const SessionCollection& collection,
                                         double min_gap = 1.0 / 60.0,
                                         double max_gap = 5.0);

// Keep sessions whose per-label events-per-minute rate lies within the
// [lo, hi] quantiles of that label's rates across sessions, for every label.
// Quantiles use linear interpolation (see quantile_linear_sorted). Requires
// at least two sessions. The applied bounds are returned via bounds_out.
SessionCollection filter_rate_quantiles(const SessionCollection& collection,
                                        double lo = 0.2, double hi = 0.8,
                                        QuantileBounds* bounds_out = nullptr);

// Same retention predicate with externally fixed bounds (used to re-apply a
// previously computed filter; trivially idempotent).
SessionCollection filter_rate_bounds(const SessionCollection& collection,
                                     const QuantileBounds& bounds);

CollectionStats summary_stats(const SessionCollection& collection);

}  // namespace hawkes
