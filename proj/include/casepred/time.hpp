#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace casepred {

/// Absolute instant, microseconds since the Unix epoch, UTC.
using TimePoint = std::int64_t;

inline constexpr std::int64_t kMicrosPerSecond = 1'000'000;

/// Sentinel accepted by parse_timestamp selecting the built-in ISO-8601 parser.
inline constexpr const char* kIso8601Format = "iso8601";

/// Parses `text` as an absolute timestamp.
///
/// With the default "iso8601" format this accepts `YYYY-MM-DD[T ]HH:MM:SS`
/// with optional fractional seconds (kept to microsecond precision) and an
/// optional `Z` or `+HH:MM` / `-HH:MM` offset. Any other format string is
/// interpreted with std::get_time semantics (no fractional seconds, UTC).
std::optional<TimePoint> parse_timestamp(std::string_view text,
                                         const std::string& format = kIso8601Format);

/// Formats as ISO-8601 UTC; fractional seconds printed only when nonzero.
std::string format_timestamp(TimePoint t);

inline double seconds_between(TimePoint from, TimePoint to) {
  return static_cast<double>(to - from) / static_cast<double>(kMicrosPerSecond);
}

/// Advances `t` by a (possibly fractional) number of seconds, rounding to
/// the nearest microsecond.
TimePoint add_seconds(TimePoint t, double seconds);

}  // namespace casepred
