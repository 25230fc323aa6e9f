#include "casepred/eventlog.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "casepred/csv.hpp"

namespace casepred {

ActivityIndex Vocabulary::add_or_get(std::string_view label) {
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<ActivityIndex>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), idx);
  return idx;
}

std::optional<ActivityIndex> Vocabulary::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::label(ActivityIndex index) const {
  static const std::string eoc_name = "<end-of-case>";
  if (index == eoc_index()) return eoc_name;
  return labels_.at(static_cast<std::size_t>(index));
}

std::size_t EventLog::max_trace_length() const {
  std::size_t m = 0;
  for (const auto& t : traces) m = std::max(m, t.events.size());
  return m;
}

std::size_t EventLog::total_events() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += t.events.size();
  return n;
}

namespace {

struct RawEvent {
  std::string label;
  TimePoint end_time;
  std::string role;
  std::size_t file_order;
};

std::size_t require_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ParseError("missing required column '" + name + "'");
}

}  // namespace

EventLog parse_csv_log(std::istream& in, const ColumnMapping& mapping,
                       const std::string& timestamp_format) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next_row(header)) throw ParseError("event log is empty (no header row)");

  const std::size_t case_idx = require_column(header, mapping.case_col);
  const std::size_t act_idx = require_column(header, mapping.activity_col);
  const std::size_t time_idx = require_column(header, mapping.time_col);
  std::optional<std::size_t> role_idx;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == mapping.role_col) role_idx = i;
  }
  const std::size_t min_cells = std::max({case_idx, act_idx, time_idx}) + 1;

  std::vector<std::string> case_order;
  std::unordered_map<std::string, std::vector<RawEvent>> by_case;
  std::vector<std::string> row;
  std::size_t row_number = 0;
  while (reader.next_row(row)) {
    ++row_number;
    if (row.size() < min_cells) {
      throw ParseError("row " + std::to_string(row_number) + ": expected at least " +
                       std::to_string(min_cells) + " columns, got " + std::to_string(row.size()));
    }
    auto ts = parse_timestamp(row[time_idx], timestamp_format);
    if (!ts) {
      throw ParseError("row " + std::to_string(row_number) + ": unparseable timestamp '" +
                       row[time_idx] + "'");
    }
    auto& bucket = by_case[row[case_idx]];
    if (bucket.empty()) case_order.push_back(row[case_idx]);
    std::string role;
    if (role_idx && *role_idx < row.size()) role = row[*role_idx];
    bucket.push_back(RawEvent{row[act_idx], *ts, std::move(role), row_number});
  }
  if (row_number == 0) throw ParseError("event log is empty (no data rows)");

  EventLog log;
  log.traces.reserve(case_order.size());
  for (const auto& case_id : case_order) {
    auto& raw = by_case[case_id];
    std::stable_sort(raw.begin(), raw.end(), [](const RawEvent& a, const RawEvent& b) {
      return a.end_time < b.end_time;
    });
    Trace trace;
    trace.case_id = case_id;
    trace.events.reserve(raw.size());
    for (auto& ev : raw) {
      trace.events.push_back(
          Event{log.vocabulary.add_or_get(ev.label), ev.end_time, std::move(ev.role)});
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

void write_csv_log(std::ostream& out, const EventLog& log) {
  const std::vector<std::string> header = {"case_id", "activity", "end_time", "role"};
  write_csv_row(out, header);
  std::vector<std::string> row(4);
  for (const auto& trace : log.traces) {
    for (const auto& ev : trace.events) {
      row[0] = trace.case_id;
      row[1] = log.vocabulary.label(ev.activity);
      row[2] = format_timestamp(ev.end_time);
      row[3] = ev.role;
      write_csv_row(out, row);
    }
  }
}

std::pair<EventLog, EventLog> temporal_split(const EventLog& log, double train_fraction) {
  const std::size_t n = log.traces.size();
  if (n < 2) throw std::invalid_argument("temporal_split requires at least 2 traces");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must be in (0,1)");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ta = log.traces[a];
    const auto& tb = log.traces[b];
    if (ta.start_time() != tb.start_time()) return ta.start_time() < tb.start_time();
    return ta.case_id < tb.case_id;
  });

  auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  EventLog train, test;
  train.vocabulary = log.vocabulary;
  test.vocabulary = log.vocabulary;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? train : test).traces.push_back(log.traces[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

std::vector<PrefixSuffixPair> enumerate_prefix_pairs(const Trace& trace) {
  std::vector<PrefixSuffixPair> pairs;
  if (trace.events.size() < 2) return pairs;
  pairs.reserve(trace.events.size() - 1);
  for (std::size_t k = 1; k < trace.events.size(); ++k) {
    PrefixSuffixPair pair;
    pair.case_id = trace.case_id;
    pair.k = static_cast<int>(k);
    pair.prefix.assign(trace.events.begin(), trace.events.begin() + static_cast<long>(k));
    pair.true_suffix.assign(trace.events.begin() + static_cast<long>(k), trace.events.end());
    pair.prefix_end_time = pair.prefix.back().end_time;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace casepred
