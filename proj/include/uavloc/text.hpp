#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavloc::text {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_shortest(double value);

/// Shortest round-trip form, guaranteed to contain a decimal point
/// (so 120 renders as "120.0"). Used for timestamp fields.
std::string format_seconds(double value);

/// Shortest round-trip form padded to at least two fractional digits
/// (so -80 renders as "-80.00"). Used for dB fields.
std::string format_db(double value);

/// Strict full-field parse; rejects empty fields, trailing garbage and
/// non-finite values.
std::optional<double> parse_double(std::string_view field);

/// Strict full-field decimal integer parse.
std::optional<long long> parse_int(std::string_view field);

/// Splits on `sep` without collapsing empty fields ("a,,b" -> 3 fields).
std::vector<std::string_view> split_fields(std::string_view line, char sep);

/// Strips one trailing "\n" or "\r\n".
std::string_view strip_line_ending(std::string_view line);

}  // namespace uavloc::text
