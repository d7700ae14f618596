#include "egolink/text.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace egolink {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    if (s.empty() || s.size() > 20) return std::nullopt;
    char buf[24];
    std::memcpy(buf, s.data(), s.size());
    buf[s.size()] = '\0';
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(buf, &end, 10);
    if (errno != 0 || end != buf + s.size()) return std::nullopt;
    return static_cast<std::int64_t>(v);
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty() || s.size() > 63) return std::nullopt;
    char buf[64];
    std::memcpy(buf, s.data(), s.size());
    buf[s.size()] = '\0';
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf, &end);
    if (errno != 0 || end != buf + s.size()) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_duration(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::int64_t mult = 1;
    switch (s.back()) {
        case 's': mult = 1; s.remove_suffix(1); break;
        case 'm': mult = 60; s.remove_suffix(1); break;
        case 'h': mult = 3600; s.remove_suffix(1); break;
        case 'd': mult = 86400; s.remove_suffix(1); break;
        default: break;
    }
    const auto v = parse_int(s);
    if (!v || *v < 0) return std::nullopt;
    return *v * mult;
}

std::optional<std::int64_t> parse_tz_offset(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s == "utc" || s == "UTC" || s == "Z" || s == "z") return 0;
    std::int64_t sign = 1;
    if (s.front() == '+' || s.front() == '-') {
        sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
    }
    // hh:mm or hhmm forms
    const std::size_t colon = s.find(':');
    if (colon != std::string_view::npos) {
        const auto h = parse_int(s.substr(0, colon));
        const auto m = parse_int(s.substr(colon + 1));
        if (!h || !m || *h > 14 || *m > 59) return std::nullopt;
        return sign * (*h * 3600 + *m * 60);
    }
    if (s.size() == 4 && std::isdigit(static_cast<unsigned char>(s[0]))) {
        const auto h = parse_int(s.substr(0, 2));
        const auto m = parse_int(s.substr(2, 2));
        if (!h || !m || *h > 14 || *m > 59) return std::nullopt;
        return sign * (*h * 3600 + *m * 60);
    }
    const auto d = parse_duration(s);
    if (!d) return std::nullopt;
    return sign * *d;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace egolink
