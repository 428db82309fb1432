#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace facewall {

/// UTC instant with microsecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

/// Parses an RFC 3339 date-time ("2015-03-02T10:00:00Z",
/// "2012-01-01T00:00:00+02:00", optional fractional seconds up to microsecond
/// precision) and normalizes it to UTC. Text without a zone designator, leap
/// seconds and sub-microsecond precision are rejected.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ", with ".ffffff" only when the instant
/// has a non-zero sub-second part. parse_rfc3339 inverts it exactly.
std::string format_rfc3339(Timestamp ts);

/// "YYYY-MM-DD" full-date of the UTC day.
std::string format_date(std::chrono::sys_days day);

std::optional<std::chrono::sys_days> parse_date(std::string_view text);

}  // namespace facewall
