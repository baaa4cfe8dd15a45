#pragma once

// Locale-independent number formatting and parsing.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace bdwork {

/// Shortest representation that parses back to the identical double.
inline std::string format_roundtrip(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

inline std::string format_fixed(double v, int decimals) {
    char buf[128];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    std::string s = ec == std::errc{} ? std::string(buf, end) : std::string("nan");
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

/// Fraction rendered as a percentage, e.g. 0.0123 -> "1.230%" with 3 decimals.
inline std::string format_percent(double fraction, int decimals) {
    return format_fixed(fraction * 100.0, decimals) + "%";
}

inline std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

/// Quotes a CSV field when it contains a separator, quote, newline or edge whitespace.
inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos && trim(s) == s) return std::string(s);
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

/// Whole-field decimal parse; rejects trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace bdwork
