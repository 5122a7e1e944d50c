#include "core/events_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace hawkes {

namespace {

using nlohmann::json;

struct RawEvent {
  double t = 0.0;
  bool is_chat = true;
  std::vector<size_t> labels;
  long line = 0;
};

struct RawSession {
  std::string id;
  std::optional<double> declared_duration;
  long duration_line = 0;
  std::vector<RawEvent> events;
};

[[noreturn]] void fail(const std::string& source, long line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw ParseError(msg.str(), line);
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

SessionCollection parse_events_stream(std::istream& in, const EmotionSet& emotions,
                                      const ParseOptions& options,
                                      const std::string& source_name) {
  std::vector<RawSession> raw;
  std::unordered_map<std::string, size_t> session_index;

  auto session_slot = [&](const std::string& id) -> RawSession& {
    auto [it, inserted] = session_index.emplace(id, raw.size());
    if (inserted) {
      raw.emplace_back();
      raw.back().id = id;
    }
    return raw[it->second];
  };

  std::string text;
  long line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty() || text.find_first_not_of(" \t\r") == std::string::npos) continue;

    json record = json::parse(text, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      fail(source_name, line_no, "malformed record (expected one JSON object per line)");
    }
    if (!record.contains("session") || !record["session"].is_string()) {
      fail(source_name, line_no, "missing string field 'session'");
    }
    const std::string session_id = record["session"].get<std::string>();
    if (!record.contains("kind") || !record["kind"].is_string()) {
      fail(source_name, line_no, "missing string field 'kind'");
    }
    const std::string kind = record["kind"].get<std::string>();

    if (kind == "meta") {
      if (!record.contains("duration") || !record["duration"].is_number()) {
        fail(source_name, line_no, "meta record needs a numeric 'duration'");
      }
      const double duration = record["duration"].get<double>();
      if (!(duration > 0.0)) fail(source_name, line_no, "duration must be > 0");
      auto& slot = session_slot(session_id);
      if (slot.declared_duration && *slot.declared_duration != duration) {
        fail(source_name, line_no, "conflicting duration for session " + session_id);
      }
      slot.declared_duration = duration;
      slot.duration_line = line_no;
      continue;
    }
    if (kind != "chat" && kind != "subtitle") {
      fail(source_name, line_no, "unknown kind '" + kind + "'");
    }
    if (!record.contains("t") || !record["t"].is_number()) {
      fail(source_name, line_no, "missing numeric field 't'");
    }
    const double t = record["t"].get<double>();
    if (!std::isfinite(t)) fail(source_name, line_no, "non-finite event time");
    if (t < 0.0) fail(source_name, line_no, "event time below 0");
    if (!record.contains("labels") || !record["labels"].is_array() ||
        record["labels"].empty()) {
      fail(source_name, line_no, "missing nonempty array field 'labels'");
    }

    RawEvent event;
    event.t = t;
    event.is_chat = kind == "chat";
    event.line = line_no;
    for (const auto& entry : record["labels"]) {
      if (!entry.is_string()) fail(source_name, line_no, "labels must be strings");
      const std::string name = entry.get<std::string>();
      const auto idx = emotions.find(name);
      if (!idx) {
        if (options.allow_other_labels) continue;
        fail(source_name, line_no, "unknown label '" + name + "'");
      }
      event.labels.push_back(*idx);
    }
    if (event.labels.empty()) continue;  // projected away under allow_other_labels
    session_slot(session_id).events.push_back(std::move(event));
  }

  SessionCollection collection;
  collection.emotions = emotions;
  for (auto& slot : raw) {
    VideoSession session;
    session.id = slot.id;
    session.chat.resize(emotions.size());
    session.subtitles.resize(emotions.size());

    double max_time = 0.0;
    for (const auto& event : slot.events) max_time = std::max(max_time, event.t);
    session.duration = slot.declared_duration.value_or(max_time);
    if (!(session.duration > 0.0)) {
      // Session with only t=0 events and no header; give it a minimal span.
      session.duration = std::max(max_time, std::numeric_limits<double>::min());
    }

    std::optional<double> first_subtitle, last_subtitle;
    for (const auto& event : slot.events) {
      if (event.t > session.duration) {
        fail(source_name, event.line,
             "event time exceeds declared duration of session " + slot.id);
      }
      if (!event.is_chat) {
        first_subtitle = first_subtitle ? std::min(*first_subtitle, event.t) : event.t;
        last_subtitle = last_subtitle ? std::max(*last_subtitle, event.t) : event.t;
      }
    }
    for (const auto& event : slot.events) {
      if (options.clip_to_subtitle_window && event.is_chat) {
        if (!first_subtitle) continue;  // no subtitles: window is empty
        if (event.t < *first_subtitle || event.t > *last_subtitle) continue;
      }
      auto& lists = event.is_chat ? session.chat : session.subtitles;
      for (size_t label : event.labels) lists[label].push_back(event.t);
    }
    // Stable sort keeps input order among equal timestamps.
    for (auto& list : session.chat) std::stable_sort(list.begin(), list.end());
    for (auto& list : session.subtitles) std::stable_sort(list.begin(), list.end());
    collection.sessions.push_back(std::move(session));
  }
  return collection;
}

SessionCollection parse_events_file(const std::string& path, const EmotionSet& emotions,
                                    const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open events file: " + path);
  return parse_events_stream(in, emotions, options, path);
}

void write_events_stream(const SessionCollection& collection, std::ostream& out) {
  for (const auto& session : collection.sessions) {
    json meta = {{"session", session.id}, {"kind", "meta"}, {"duration", session.duration}};
    out << meta.dump() << "\n";
    // Merge chat and subtitle streams into global time order for readability.
    struct Row {
      double t;
      bool is_chat;
      size_t label;
    };
    std::vector<Row> rows;
    for (size_t e = 0; e < collection.emotions.size(); ++e) {
      for (double t : session.chat[e]) rows.push_back({t, true, e});
      for (double t : session.subtitles[e]) rows.push_back({t, false, e});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.t < b.t; });
    for (const auto& row : rows) {
      json record = {{"session", session.id},
                     {"t", row.t},
                     {"kind", row.is_chat ? "chat" : "subtitle"},
                     {"labels", json::array({collection.emotions.label(row.label)})}};
      out << record.dump() << "\n";
    }
  }
}

void write_events_file(const SessionCollection& collection, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write events file: " + path);
  write_events_stream(collection, out);
}

void write_stats_csv(const SessionCollection& collection, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write stats file: " + path);
  const auto stats = summary_stats(collection);
  out << "session,n_messages,median_gap_min";
  for (const auto& label : collection.emotions.labels()) out << ",rate_" << label;
  out << "\n";
  for (const auto& row : stats.per_session) {
    out << row.session_id << "," << row.n_messages << ","
        << format_double(row.median_gap_min);
    for (double rate : row.rate_per_label) out << "," << format_double(rate);
    out << "\n";
  }
}

}  // namespace hawkes
