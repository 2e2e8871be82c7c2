#include "courtcast/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <tuple>

namespace courtcast {

namespace {

constexpr std::array<const char*, 11> kBoxFields = {"fgm", "fga", "fgm3", "ft",  "fta", "or",
                                                     "dr",  "to",  "stl",  "blk", "pts"};

std::array<int*, 11> box_slots(BoxScore& box) {
    return {&box.fgm, &box.fga, &box.fgm3, &box.ft,  &box.fta,   &box.or_,
            &box.dr,  &box.to,  &box.stl,  &box.blk, &box.points};
}

std::array<int, 11> box_values(const BoxScore& box) {
    return {box.fgm, box.fga, box.fgm3, box.ft, box.fta, box.or_, box.dr, box.to, box.stl, box.blk, box.points};
}

}  // namespace

std::optional<BoxScoreIssue> validate(const BoxScore& box) {
    const auto values = box_values(box);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) return BoxScoreIssue{kBoxFields[i], "negative count"};
    }
    if (box.fgm > box.fga) return BoxScoreIssue{"fgm", "more field goals made than attempted"};
    if (box.fgm3 > box.fgm) return BoxScoreIssue{"fgm3", "more threes made than field goals made"};
    if (box.ft > box.fta) return BoxScoreIssue{"ft", "more free throws made than attempted"};
    if (box.points != box.computed_points()) {
        return BoxScoreIssue{"pts", "stated points " + std::to_string(box.points) + " but box implies " +
                                        std::to_string(box.computed_points())};
    }
    return std::nullopt;
}

GameRecord GameRecord::canonical(Date date, Season season, TeamId first, TeamId second, Location loc,
                                 BoxScore first_box, BoxScore second_box) {
    GameRecord game{date, season, std::move(first), std::move(second), loc, first_box, second_box};
    if (game.team_b < game.team_a) {
        std::swap(game.team_a, game.team_b);
        std::swap(game.box_a, game.box_b);
        if (loc == Location::home_a) {
            game.location = Location::home_b;
        } else if (loc == Location::home_b) {
            game.location = Location::home_a;
        }
    }
    return game;
}

bool chronological_less(const GameRecord& lhs, const GameRecord& rhs) {
    return std::tie(lhs.date, lhs.team_a, lhs.team_b) < std::tie(rhs.date, rhs.team_a, rhs.team_b);
}

SeasonStore::SeasonStore(std::vector<GameRecord> games, std::map<Season, std::set<TeamId>> rosters)
    : rosters_(std::move(rosters)) {
    for (auto& game : games) {
        if (game.team_a == game.team_b) throw DataError("game with identical teams '" + game.team_a + "'");
        if (!(game.team_a < game.team_b)) {
            throw InvariantError("game not in canonical orientation: " + game.team_a + " vs " + game.team_b);
        }
        if (game.box_a.points == game.box_b.points) {
            throw DataError("tied game " + game.team_a + " vs " + game.team_b + " on " + game.date.to_string());
        }
        auto& roster = rosters_[game.season];
        roster.insert(game.team_a);
        roster.insert(game.team_b);
        games_[game.season].push_back(std::move(game));
    }
    for (auto& [season, list] : games_) {
        std::stable_sort(list.begin(), list.end(), chronological_less);
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (!chronological_less(list[i - 1], list[i])) {
                throw DataError("duplicate game " + list[i].date.to_string() + " " + list[i].team_a + " vs " +
                                list[i].team_b);
            }
        }
    }
}

std::vector<Season> SeasonStore::seasons() const {
    std::vector<Season> out;
    for (const auto& [season, list] : games_) out.push_back(season);
    return out;
}

const std::vector<GameRecord>& SeasonStore::games(Season season) const {
    static const std::vector<GameRecord> empty;
    const auto it = games_.find(season);
    return it == games_.end() ? empty : it->second;
}

const std::set<TeamId>& SeasonStore::roster(Season season) const {
    static const std::set<TeamId> empty;
    const auto it = rosters_.find(season);
    return it == rosters_.end() ? empty : it->second;
}

std::size_t SeasonStore::total_games() const {
    std::size_t n = 0;
    for (const auto& [season, list] : games_) n += list.size();
    return n;
}

const std::vector<std::string>& game_log_header() {
    static const std::vector<std::string> header = [] {
        std::vector<std::string> h = {"date", "season", "team_a", "team_b", "location"};
        for (const char* side : {"a", "b"}) {
            for (const char* field : kBoxFields) h.push_back(std::string(field) + side);
        }
        return h;
    }();
    return header;
}

Roster parse_roster(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open roster file " + path.string());
    Roster roster;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto t = trim(line); t.empty() || t.front() == '#') continue;
        const auto fields = split_csv_line(line);
        if (!saw_header) {
            if (fields.size() != 2 || fields[0] != "season" || fields[1] != "team") {
                throw ParseError(path.string(), line_no, "header", "expected 'season,team'");
            }
            saw_header = true;
            continue;
        }
        if (fields.size() != 2) throw ParseError(path.string(), line_no, "row", "expected 2 fields");
        Season season = 0;
        try {
            season = static_cast<Season>(parse_integer(fields[0]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(path.string(), line_no, "season", e.what());
        }
        if (fields[1].empty()) throw ParseError(path.string(), line_no, "team", "empty team id");
        roster[season].insert(fields[1]);
    }
    if (!saw_header) throw ParseError(path.string(), line_no, "header", "missing header");
    return roster;
}

SeasonStore parse_game_log(const std::filesystem::path& path, const std::optional<Roster>& roster) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open game log " + path.string());
    return parse_game_log(in, path.string(), roster);
}

SeasonStore parse_game_log(std::istream& in, const std::string& source, const std::optional<Roster>& roster) {
    const auto& header = game_log_header();
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::vector<GameRecord> games;
    std::map<std::tuple<Date, TeamId, TeamId>, std::size_t> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto t = trim(line); t.empty() || t.front() == '#') continue;
        const auto fields = split_csv_line(line);
        if (!saw_header) {
            if (fields != header) throw ParseError(source, line_no, "header", "unexpected column layout");
            saw_header = true;
            continue;
        }
        if (fields.size() != header.size()) {
            throw ParseError(source, line_no, "row",
                             "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        }

        Date date;
        Season season = 0;
        Location loc = Location::neutral;
        try {
            date = Date::parse(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, line_no, "date", e.what());
        }
        try {
            season = static_cast<Season>(parse_integer(fields[1]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, line_no, "season", e.what());
        }
        if (fields[2].empty()) throw ParseError(source, line_no, "team_a", "empty team id");
        if (fields[3].empty()) throw ParseError(source, line_no, "team_b", "empty team id");
        if (fields[2] == fields[3]) throw ParseError(source, line_no, "team_b", "team plays itself");
        try {
            loc = parse_location(fields[4]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, line_no, "location", e.what());
        }

        BoxScore boxes[2];
        for (int side = 0; side < 2; ++side) {
            auto slots = box_slots(boxes[side]);
            for (std::size_t k = 0; k < slots.size(); ++k) {
                const std::size_t col = 5 + side * slots.size() + k;
                try {
                    const long long v = parse_integer(fields[col]);
                    if (v < 0 || v > 100000) throw std::invalid_argument("count out of range");
                    *slots[k] = static_cast<int>(v);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(source, line_no, header[col], e.what());
                }
            }
            if (auto issue = validate(boxes[side])) {
                throw ParseError(source, line_no, issue->field + (side == 0 ? "a" : "b"), issue->message);
            }
        }
        if (boxes[0].points == boxes[1].points) {
            throw ParseError(source, line_no, "pts", "tied score " + std::to_string(boxes[0].points));
        }

        if (roster) {
            const auto it = roster->find(season);
            if (it == roster->end() || !it->second.contains(fields[2]) || !it->second.contains(fields[3])) {
                continue;
            }
        }

        auto game = GameRecord::canonical(date, season, fields[2], fields[3], loc, boxes[0], boxes[1]);
        const auto key = std::make_tuple(game.date, game.team_a, game.team_b);
        if (const auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
            throw ParseError(source, line_no, "team_a",
                             "duplicate game (first seen on line " + std::to_string(it->second) + ")");
        }
        games.push_back(std::move(game));
    }
    if (!saw_header) throw ParseError(source, line_no, "header", "missing header");

    Roster rosters;
    if (roster) {
        for (const auto& game : games) rosters[game.season];
        for (auto& [season, teams] : rosters) {
            if (const auto it = roster->find(season); it != roster->end()) teams = it->second;
        }
    }
    return SeasonStore(std::move(games), std::move(rosters));
}

void write_game_log(const SeasonStore& store, std::ostream& out) {
    const auto& header = game_log_header();
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& [season, games] : store.all()) {
        for (const auto& g : games) {
            out << g.date.to_string() << ',' << g.season << ',' << g.team_a << ',' << g.team_b << ','
                << to_string(g.location);
            for (const auto* box : {&g.box_a, &g.box_b}) {
                for (int v : box_values(*box)) out << ',' << v;
            }
            out << '\n';
        }
    }
}

void write_game_log(const SeasonStore& store, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_game_log(store, out);
}

void write_roster(const SeasonStore& store, std::ostream& out) {
    out << "season,team\n";
    for (Season season : store.seasons()) {
        for (const auto& team : store.roster(season)) out << season << ',' << team << '\n';
    }
}

Partition season_partition(const SeasonStore& store, Season test_season) {
    if (!store.has_season(test_season)) {
        throw DataError("test season " + std::to_string(test_season) + " not in store");
    }
    Partition part;
    for (const auto& [season, games] : store.all()) {
        if (season < test_season) {
            part.train.insert(part.train.end(), games.begin(), games.end());
        } else if (season == test_season) {
            part.test = games;
        }
    }
    if (part.train.empty()) {
        throw DataError("no training data: season " + std::to_string(test_season) + " has no earlier season");
    }
    return part;
}

}  // namespace courtcast
