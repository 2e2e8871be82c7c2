#include "courtcast/common.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <utility>

namespace courtcast {

Date::Date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw std::invalid_argument("invalid calendar date");
    }
    days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(iso) + "'");
    }
    auto number = [&](std::size_t pos, std::size_t len) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(iso.data() + pos, iso.data() + pos + len, value);
        if (ec != std::errc{} || ptr != iso.data() + pos + len) {
            throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(iso) + "'");
        }
        return value;
    };
    return Date(number(0, 4), static_cast<unsigned>(number(5, 2)), static_cast<unsigned>(number(8, 2)));
}

std::string Date::to_string() const {
    const std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string_view to_string(Location loc) {
    switch (loc) {
    case Location::home_a: return "home_a";
    case Location::home_b: return "home_b";
    case Location::neutral: return "neutral";
    }
    return "neutral";
}

Location parse_location(std::string_view text) {
    if (text == "home_a") return Location::home_a;
    if (text == "home_b") return Location::home_b;
    if (text == "neutral") return Location::neutral;
    throw std::invalid_argument("unknown location '" + std::string(text) + "'");
}

std::string_view to_string(Venue venue) {
    switch (venue) {
    case Venue::home: return "home";
    case Venue::away: return "away";
    case Venue::neutral: return "neutral";
    }
    return "neutral";
}

Venue parse_venue(std::string_view text) {
    if (text == "home") return Venue::home;
    if (text == "away") return Venue::away;
    if (text == "neutral") return Venue::neutral;
    throw std::invalid_argument("unknown venue '" + std::string(text) + "'");
}

Venue venue_of_first(Location loc) {
    switch (loc) {
    case Location::home_a: return Venue::home;
    case Location::home_b: return Venue::away;
    case Location::neutral: return Venue::neutral;
    }
    return Venue::neutral;
}

Venue mirrored(Venue venue) {
    switch (venue) {
    case Venue::home: return Venue::away;
    case Venue::away: return Venue::home;
    case Venue::neutral: return Venue::neutral;
    }
    return Venue::neutral;
}

ParseError::ParseError(std::string path, std::size_t line, std::string field, const std::string& what)
    : DataError(path + ":" + std::to_string(line) + ": field '" + field + "': " + what),
      path_(std::move(path)),
      line_(line),
      field_(std::move(field)) {}

std::string format_double(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw InvariantError("to_chars failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(trim(current));
    return fields;
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

}  // namespace courtcast
