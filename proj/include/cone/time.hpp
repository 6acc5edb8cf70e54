#pragma once

#include <cstdint>
#include <string>

namespace cone {

// UTC instant with second resolution, stored as seconds since the Unix epoch.
using Instant = std::int64_t;

constexpr std::int64_t kSecondsPerDay = 86400;

constexpr std::int64_t days(std::int64_t n) { return n * kSecondsPerDay; }

// Parses an RFC-3339 timestamp ("2020-03-01T12:00:00Z", optional fractional
// seconds, 'Z' or a numeric offset). Fractional seconds are truncated.
// Throws std::invalid_argument on malformed input.
Instant parse_instant(const std::string& text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_instant(Instant t);

} // namespace cone
