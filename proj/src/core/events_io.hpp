#pragma once

#include <iosfwd>
#include <string>

#include "core/event_model.hpp"

namespace hawkes {

struct ParseOptions {
  // Error on labels outside the emotion set (default) or silently project
  // records onto the declared set, dropping events with no known label.
  bool allow_other_labels = false;
  // Drop chat events before the first or after the last subtitle time of
  // their session (mirrors transcript-window trimming of raw dumps).
  bool clip_to_subtitle_window = false;
};

// Events file format: one JSON object per line, UTF-8.
//   {"session": "...", "t": <minutes>, "kind": "chat"|"subtitle", "labels": ["..."]}
// plus an optional per-session header
//   {"session": "...", "kind": "meta", "duration": <minutes>}
// Session duration falls back to the maximum event time when no header is
// present. Sessions appear in the order their first record appears.
SessionCollection parse_events_file(const std::string& path, const EmotionSet& emotions,
                                    const ParseOptions& options = {});
SessionCollection parse_events_stream(std::istream& in, const EmotionSet& emotions,
                                      const ParseOptions& options = {},
                                      const std::string& source_name = "<stream>");

// Inverse of parsing: a meta line per session, then one single-label record
// per event in time order. parse(serialize(c)) == c.
void write_events_file(const SessionCollection& collection, const std::string& path);
void write_events_stream(const SessionCollection& collection, std::ostream& out);

// Stats CSV: session,n_messages,median_gap_min,rate_<label>...
void write_stats_csv(const SessionCollection& collection, const std::string& path);

}  // namespace hawkes
