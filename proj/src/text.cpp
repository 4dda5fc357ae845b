#include "uavloc/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace uavloc::text {

std::string format_shortest(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;  // 64 bytes always suffice for a double
    return std::string(buf, end);
}

namespace {

bool has_exponent_or_point(const std::string& s) {
    return s.find_first_of(".eE") != std::string::npos;
}

}  // namespace

std::string format_seconds(double value) {
    std::string s = format_shortest(value);
    if (!has_exponent_or_point(s)) s += ".0";
    return s;
}

std::string format_db(double value) {
    std::string s = format_shortest(value);
    if (s.find_first_of("eE") != std::string::npos) return s;
    auto dot = s.find('.');
    if (dot == std::string::npos) return s + ".00";
    auto decimals = s.size() - dot - 1;
    if (decimals < 2) s.append(2 - decimals, '0');
    return s;
}

std::optional<double> parse_double(std::string_view field) {
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long long> parse_int(std::string_view field) {
    if (field.empty()) return std::nullopt;
    long long value = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view strip_line_ending(std::string_view line) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace uavloc::text
