#include "courtcast/common.hpp"

#include <random>

#include "doctest.h"

using namespace courtcast;

TEST_CASE("dates parse, print and order") {
    const Date d = Date::parse("2011-01-10");
    CHECK(d.to_string() == "2011-01-10");
    CHECK(d.plus_days(22).to_string() == "2011-02-01");
    CHECK(Date(2010, 12, 31) < d);
    CHECK_THROWS_AS(Date::parse("2011-1-10"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("2011-02-30"), std::invalid_argument);
}

TEST_CASE("venue helpers follow the first team") {
    CHECK(venue_of_first(Location::home_a) == Venue::home);
    CHECK(venue_of_first(Location::home_b) == Venue::away);
    CHECK(venue_of_first(Location::neutral) == Venue::neutral);
    CHECK(mirrored(Venue::home) == Venue::away);
    CHECK(mirrored(Venue::neutral) == Venue::neutral);
    CHECK(parse_location("home_b") == Location::home_b);
    CHECK_THROWS(parse_location("road"));
}

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(102.0) == "102");
}

TEST_CASE("csv splitting honours quotes") {
    CHECK(split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split_csv_line("\"x,y\",z") == std::vector<std::string>{"x,y", "z"});
    CHECK(split_csv_line("a,b\r") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("number parsing rejects junk") {
    CHECK(parse_integer("42") == 42);
    CHECK_THROWS_AS(parse_integer("4x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("nan"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}
