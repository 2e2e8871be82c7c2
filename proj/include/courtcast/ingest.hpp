#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "courtcast/common.hpp"

namespace courtcast {

/// One team's counting statistics for one game.
struct BoxScore {
    int fgm = 0;
    int fga = 0;
    int fgm3 = 0;
    int ft = 0;
    int fta = 0;
    int or_ = 0;
    int dr = 0;
    int to = 0;
    int stl = 0;
    int blk = 0;
    int points = 0;

    int computed_points() const { return 2 * (fgm - fgm3) + 3 * fgm3 + ft; }

    friend bool operator==(const BoxScore&, const BoxScore&) = default;
};

/// Problem found by validate(): the offending field and a message.
struct BoxScoreIssue {
    std::string field;
    std::string message;
};

std::optional<BoxScoreIssue> validate(const BoxScore& box);

/// A completed game, always stored with team_a < team_b.
struct GameRecord {
    Date date;
    Season season = 0;
    TeamId team_a;
    TeamId team_b;
    Location location = Location::neutral;
    BoxScore box_a;
    BoxScore box_b;

    /// Builds a record from either orientation; `loc` is relative to `first`.
    static GameRecord canonical(Date date, Season season, TeamId first, TeamId second, Location loc,
                                BoxScore first_box, BoxScore second_box);

    bool a_won() const { return box_a.points > box_b.points; }

    friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

/// Orders games by date, then by team pair.
bool chronological_less(const GameRecord& lhs, const GameRecord& rhs);

/// Games grouped by season in chronological order, plus per-season rosters.
/// Immutable after construction.
class SeasonStore {
public:
    SeasonStore() = default;

    /// Sorts, checks canonical orientation and duplicates. Teams that appear
    /// in games are added to the roster of their season.
    SeasonStore(std::vector<GameRecord> games, std::map<Season, std::set<TeamId>> rosters = {});

    std::vector<Season> seasons() const;
    bool has_season(Season season) const { return games_.contains(season); }
    const std::vector<GameRecord>& games(Season season) const;
    const std::set<TeamId>& roster(Season season) const;
    std::size_t total_games() const;
    const std::map<Season, std::vector<GameRecord>>& all() const { return games_; }

    friend bool operator==(const SeasonStore&, const SeasonStore&) = default;

private:
    std::map<Season, std::vector<GameRecord>> games_;
    std::map<Season, std::set<TeamId>> rosters_;
};

using Roster = std::map<Season, std::set<TeamId>>;

/// Reads a `season,team` roster file.
Roster parse_roster(const std::filesystem::path& path);

/// Reads a game log. When a roster is given, games with a team outside the
/// roster of their season are dropped; otherwise every valid row is kept.
SeasonStore parse_game_log(const std::filesystem::path& path, const std::optional<Roster>& roster = std::nullopt);
SeasonStore parse_game_log(std::istream& in, const std::string& source_name,
                           const std::optional<Roster>& roster = std::nullopt);

void write_game_log(const SeasonStore& store, std::ostream& out);
void write_game_log(const SeasonStore& store, const std::filesystem::path& path);
void write_roster(const SeasonStore& store, std::ostream& out);

/// Column names of the game-log CSV, in order.
const std::vector<std::string>& game_log_header();

struct Partition {
    std::vector<GameRecord> train;
    std::vector<GameRecord> test;
};

/// Training set: every stored season before `test_season`; test set: `test_season`.
Partition season_partition(const SeasonStore& store, Season test_season);

}  // namespace courtcast
