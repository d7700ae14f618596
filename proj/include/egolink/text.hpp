#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egolink {

std::vector<std::string_view> split_csv(std::string_view line);

std::string_view trim(std::string_view s);

std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

// Durations like "30" (seconds), "90s", "30m", "1h", "168h", "7d".
std::optional<std::int64_t> parse_duration(std::string_view s);

// Timezone offsets like "+01:00", "-0230", "2h", "-3600" (seconds), "utc".
std::optional<std::int64_t> parse_tz_offset(std::string_view s);

// Shortest-round-trip-safe formatting ("%.17g") so report CSVs are
// byte-deterministic and parse back to the identical double.
std::string format_double(double v);

std::string lowercase(std::string_view s);

}  // namespace egolink
