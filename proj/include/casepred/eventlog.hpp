#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "casepred/time.hpp"

namespace casepred {

using ActivityIndex = std::int32_t;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Activity label dictionary. Label indices are 0..size()-1; the end-of-case
/// symbol is the reserved index one past the last label.
class Vocabulary {
 public:
  ActivityIndex add_or_get(std::string_view label);
  std::optional<ActivityIndex> index_of(std::string_view label) const;

  /// Label for an activity index; the EOC index maps to a diagnostic name.
  const std::string& label(ActivityIndex index) const;

  ActivityIndex eoc_index() const { return static_cast<ActivityIndex>(labels_.size()); }
  std::size_t size() const { return labels_.size(); }
  std::size_t size_with_eoc() const { return labels_.size() + 1; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const Vocabulary& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ActivityIndex> index_;
};

struct Event {
  ActivityIndex activity = 0;
  TimePoint end_time = 0;
  std::string role;  // parsed, not modeled

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  // Case start time proxy: completion time of the first event.
  TimePoint start_time() const { return events.front().end_time; }
  std::size_t length() const { return events.size(); }

  bool operator==(const Trace&) const = default;
};

struct EventLog {
  std::vector<Trace> traces;
  Vocabulary vocabulary;

  std::size_t max_trace_length() const;
  std::size_t total_events() const;

  bool operator==(const EventLog&) const = default;
};

/// One evaluation instance: the first k events of a case and the rest.
struct PrefixSuffixPair {
  std::string case_id;
  int k = 0;
  std::vector<Event> prefix;
  std::vector<Event> true_suffix;
  TimePoint prefix_end_time = 0;
};

struct ColumnMapping {
  std::string case_col = "case_id";
  std::string activity_col = "activity";
  std::string time_col = "end_time";
  std::string role_col = "role";
};

/// Parses a CSV event log. Rows are grouped by case id (cases kept in order
/// of first appearance), each trace is sorted by end_time ascending with file
/// order as the tie-break, and the vocabulary is built from distinct labels
/// in their first-appearance order over the parsed log.
///
/// Throws ParseError for a missing required column, an unparseable timestamp
/// (message cites the 1-based data row), or a log with no data rows.
EventLog parse_csv_log(std::istream& in, const ColumnMapping& mapping = {},
                       const std::string& timestamp_format = kIso8601Format);

/// Writes the canonical CSV form (`case_id,activity,end_time,role` header).
/// parse_csv_log(write_csv_log(log)) == log.
void write_csv_log(std::ostream& out, const EventLog& log);

/// Splits traces chronologically by start time (ties broken by case_id).
/// The first floor(train_fraction * n) traces, clamped to [1, n-1], form the
/// train log; both halves share the parent vocabulary.
std::pair<EventLog, EventLog> temporal_split(const EventLog& log, double train_fraction);

/// All (prefix, suffix) pairs of a trace, k = 1..length-1 ascending.
/// A trace of length 1 yields an empty list.
std::vector<PrefixSuffixPair> enumerate_prefix_pairs(const Trace& trace);

}  // namespace casepred
