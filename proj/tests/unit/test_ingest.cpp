#include "courtcast/ingest.hpp"

#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace courtcast;

namespace {

const std::string kHeader =
    "date,season,team_a,team_b,location,fgma,fgaa,fgm3a,fta,ftaa,ora,dra,toa,stla,blka,ptsa,"
    "fgmb,fgab,fgm3b,ftb,ftab,orb,drb,tob,stlb,blkb,ptsb\n";

// 25 fgm, 8 threes, 12 ft -> 70 points; 24 fgm, 5 threes, 10 ft -> 63 points
const std::string kBoxA = "25,58,8,12,18,10,24,12,6,3,70";
const std::string kBoxB = "24,60,5,10,16,11,22,14,5,2,63";

SeasonStore parse(const std::string& body) {
    std::istringstream in(kHeader + body);
    return parse_game_log(in, "games.csv");
}

ParseError parse_error(const std::string& body) {
    try {
        parse(body);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError("", 0, "", "");
}

}  // namespace

TEST_CASE("header matches the documented layout") {
    std::string joined;
    for (const auto& h : game_log_header()) joined += (joined.empty() ? "" : ",") + h;
    CHECK(joined + "\n" == kHeader);
}

TEST_CASE("header-only file gives an empty store") {
    const auto store = parse("");
    CHECK(store.total_games() == 0);
    CHECK(store.seasons().empty());
}

TEST_CASE("rows are stored in canonical orientation") {
    SUBCASE("already canonical") {
        const auto store = parse("2011-01-10,2011,duke,unc,home_a," + kBoxA + "," + kBoxB + "\n");
        REQUIRE(store.total_games() == 1);
        const auto& g = store.games(2011).front();
        CHECK(g.team_a == "duke");
        CHECK(g.location == Location::home_a);
        CHECK(g.box_a.points == 70);
    }
    SUBCASE("swapped on input") {
        const auto store = parse("2011-01-10,2011,unc,duke,home_a," + kBoxA + "," + kBoxB + "\n");
        const auto& g = store.games(2011).front();
        CHECK(g.team_a == "duke");
        CHECK(g.team_b == "unc");
        CHECK(g.location == Location::home_b);
        CHECK(g.box_a.points == 63);
        CHECK(g.box_b.points == 70);
        CHECK_FALSE(g.a_won());
    }
}

TEST_CASE("malformed rows report line and field") {
    const std::string ok = "2011-01-10,2011,duke,unc,home_a," + kBoxA + "," + kBoxB + "\n";
    SUBCASE("bad count") {
        const auto e = parse_error(ok + "2011-01-11,2011,duke,wake,neutral,x5,58,8,12,18,10,24,12,6,3,70," + kBoxB +
                                   "\n");
        CHECK(e.line() == 3);
        CHECK(e.field() == "fgma");
        CHECK(e.path() == "games.csv");
    }
    SUBCASE("bad date") {
        const auto e = parse_error("2011/01/10,2011,duke,unc,home_a," + kBoxA + "," + kBoxB + "\n");
        CHECK(e.field() == "date");
    }
    SUBCASE("points inconsistent with the box") {
        const auto e = parse_error("2011-01-10,2011,duke,unc,home_a,25,58,8,12,18,10,24,12,6,3,71," + kBoxB + "\n");
        CHECK(e.field() == "ptsa");
        CHECK(std::string(e.what()).find("71") != std::string::npos);
        CHECK(std::string(e.what()).find("70") != std::string::npos);
    }
    SUBCASE("wrong field count") {
        CHECK(parse_error("2011-01-10,2011,duke,unc,home_a\n").field() == "row");
    }
    SUBCASE("tied game") {
        CHECK(parse_error("2011-01-10,2011,duke,unc,home_a," + kBoxA + "," + kBoxA + "\n").field() == "pts");
    }
    SUBCASE("duplicate in either orientation") {
        const auto e = parse_error(ok + "2011-01-10,2011,unc,duke,home_b," + kBoxB + "," + kBoxA + "\n");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
    SUBCASE("bad location") {
        CHECK(parse_error("2011-01-10,2011,duke,unc,road," + kBoxA + "," + kBoxB + "\n").field() == "location");
    }
    SUBCASE("bad header") {
        std::istringstream in("date,season\n");
        CHECK_THROWS_AS(parse_game_log(in, "x"), ParseError);
    }
}

TEST_CASE("box validation") {
    CHECK_FALSE(validate(fixtures::box(25, 58, 8, 12, 18, 10, 24, 12)));
    auto b = fixtures::box(25, 58, 8, 12, 18, 10, 24, 12);
    b.fgm = 60;
    b.points = b.computed_points();
    CHECK(validate(b)->field == "fgm");
    b = fixtures::box(25, 58, 8, 12, 18, 10, 24, 12);
    b.ft = 20;
    b.points = b.computed_points();
    CHECK(validate(b)->field == "ft");
    b = fixtures::box(25, 58, 8, 12, 18, 10, 24, 12);
    b.to = -1;
    CHECK(validate(b)->message == "negative count");
}

TEST_CASE("roster filters out non-roster games") {
    const Roster roster = {{2011, {"duke", "unc"}}};
    std::istringstream in(kHeader + "2011-01-10,2011,duke,unc,home_a," + kBoxA + "," + kBoxB + "\n" +
                          "2011-01-12,2011,duke,elon,home_a," + kBoxA + "," + kBoxB + "\n");
    const auto store = parse_game_log(in, "games.csv", roster);
    CHECK(store.total_games() == 1);
    CHECK(store.roster(2011) == std::set<TeamId>{"duke", "unc"});
}

TEST_CASE("store keeps games sorted by date then team pair") {
    std::vector<GameRecord> games = {
        fixtures::game("2011-01-12", 2011, "c", "d", Location::neutral, 70, 60),
        fixtures::game("2011-01-10", 2011, "c", "d", Location::neutral, 70, 60),
        fixtures::game("2011-01-10", 2011, "a", "b", Location::neutral, 70, 60),
    };
    const SeasonStore store(games);
    const auto& s = store.games(2011);
    CHECK(s[0].team_a == "a");
    CHECK(s[1].team_a == "c");
    CHECK(s[2].date == Date(2011, 1, 12));
    CHECK(store.roster(2011).size() == 4);
    CHECK_THROWS_AS(SeasonStore({games[0], games[0]}), DataError);
}

TEST_CASE("serialize and re-parse yields an identical store") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto league = fixtures::small_league(seed, 2, 6, 5);
        std::ostringstream out;
        write_game_log(league.store, out);
        std::istringstream in(out.str());
        CHECK(parse_game_log(in, "round-trip") == league.store);

        std::ostringstream roster_out;
        write_roster(league.store, roster_out);
        CHECK(roster_out.str().starts_with("season,team\n"));
    }
}

TEST_CASE("season partition grows cumulatively") {
    // 20 teams x 10 games = 100 games per season
    const auto league = fixtures::small_league(9, 3, 20, 10);
    const auto seasons = league.store.seasons();
    REQUIRE(seasons.size() == 3);
    const auto third = season_partition(league.store, seasons[2]);
    CHECK(third.train.size() == 200);
    CHECK(third.test.size() == 100);
    const auto second = season_partition(league.store, seasons[1]);
    CHECK(third.train.size() == second.train.size() + second.test.size());
    CHECK_THROWS_WITH_AS(season_partition(league.store, seasons[0]), doctest::Contains("no training data"),
                         DataError);
    CHECK_THROWS_AS(season_partition(league.store, 1999), DataError);
}
