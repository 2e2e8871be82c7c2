#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace courtcast {

/// Calendar date with day arithmetic. Parsed from and printed as YYYY-MM-DD.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);
    explicit Date(std::chrono::sys_days days) : days_(days) {}

    static Date parse(std::string_view iso);

    std::string to_string() const;
    std::chrono::sys_days days() const { return days_; }
    Date plus_days(int n) const { return Date(days_ + std::chrono::days{n}); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

using TeamId = std::string;
using Season = int;

/// Venue of a stored game, relative to the canonical first team.
enum class Location { home_a, home_b, neutral };

/// Venue from one team's own perspective.
enum class Venue { home, away, neutral };

enum class Label { loss = 0, win = 1 };

std::string_view to_string(Location loc);
Location parse_location(std::string_view text);
std::string_view to_string(Venue venue);
Venue parse_venue(std::string_view text);
inline std::string_view to_string(Label label) { return label == Label::win ? "win" : "loss"; }

Venue venue_of_first(Location loc);
Venue mirrored(Venue venue);

/// Input data is malformed or inconsistent (bad rows, missing files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed row in a CSV input, with its position.
class ParseError : public DataError {
public:
    ParseError(std::string path, std::size_t line, std::string field, const std::string& what);

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string path_;
    std::size_t line_;
    std::string field_;
};

/// Bad option or configuration value (usage error).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);
std::string trim(std::string_view text);

}  // namespace courtcast
