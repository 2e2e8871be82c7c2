#include "courtcast/features.hpp"

#include <map>

namespace courtcast {

namespace {

std::vector<std::string> per_team(std::string_view suffix_kind, const std::vector<std::string>& stems) {
    std::vector<std::string> names;
    for (const char* side : {"a_", "b_"}) {
        for (const auto& stem : stems) names.push_back(side + std::string(suffix_kind) + stem);
    }
    return names;
}

std::vector<std::string> factor_stems(std::string_view prefix) {
    std::vector<std::string> stems;
    for (const char* part : {"off_", "def_"}) {
        for (auto f : kFactorNames) stems.push_back(std::string(prefix) + part + std::string(f));
    }
    return stems;
}

void append(std::vector<double>& out, const FactorArray& values) { out.insert(out.end(), values.begin(), values.end()); }

void append_team(std::vector<double>& out, const TeamSnapshot& s, FeatureScheme scheme) {
    switch (scheme) {
    case FeatureScheme::adj_eff:
        out.push_back(s.adj_oe);
        out.push_back(s.adj_de);
        break;
    case FeatureScheme::four_factors:
        append(out, s.off);
        append(out, s.def);
        break;
    case FeatureScheme::adj_four_factors:
        append(out, s.adj_off);
        append(out, s.adj_def);
        break;
    case FeatureScheme::raw:
        out.insert(out.end(), s.counting.begin(), s.counting.end());
        break;
    default:
        break;
    }
}

Label label_for_first(const BoxScore& first, const BoxScore& second) {
    return first.points > second.points ? Label::win : Label::loss;
}

void check_snapshot(const TeamSnapshot& snap, const TeamId& team, Date date) {
    if (snap.team != team) throw InvariantError("snapshot for " + snap.team + " used for " + team);
    if (snap.date != date) {
        throw InvariantError("snapshot dated " + snap.date.to_string() + " used for game on " + date.to_string() +
                             " (" + team + ")");
    }
}

}  // namespace

std::string_view to_string(FeatureScheme scheme) {
    switch (scheme) {
    case FeatureScheme::adj_eff: return "adj_eff";
    case FeatureScheme::four_factors: return "four_factors";
    case FeatureScheme::adj_four_factors: return "adj_four_factors";
    case FeatureScheme::raw: return "raw";
    case FeatureScheme::diff_off_vs_def: return "diff_off_vs_def";
    case FeatureScheme::diff_like_vs_like: return "diff_like_vs_like";
    }
    return "adj_eff";
}

FeatureScheme parse_scheme(std::string_view text) {
    for (auto scheme : kAllSchemes) {
        if (to_string(scheme) == text) return scheme;
    }
    throw ConfigError("unknown feature scheme '" + std::string(text) + "'");
}

const std::vector<std::string>& feature_names(FeatureScheme scheme) {
    static const std::map<FeatureScheme, std::vector<std::string>> names = [] {
        std::map<FeatureScheme, std::vector<std::string>> m;
        m[FeatureScheme::adj_eff] = per_team("", {"adj_oe", "adj_de"});
        m[FeatureScheme::four_factors] = per_team("", factor_stems(""));
        m[FeatureScheme::adj_four_factors] = per_team("", factor_stems("adj_"));
        m[FeatureScheme::raw] = per_team("", {kCountingNames.begin(), kCountingNames.end()});
        std::vector<std::string> ovd;
        for (const char* pair : {"a_off_minus_b_def_", "b_off_minus_a_def_"}) {
            for (auto f : kFactorNames) ovd.push_back(pair + std::string(f));
        }
        m[FeatureScheme::diff_off_vs_def] = ovd;
        std::vector<std::string> lvl;
        for (const char* pair : {"off_diff_", "def_diff_"}) {
            for (auto f : kFactorNames) lvl.push_back(pair + std::string(f));
        }
        m[FeatureScheme::diff_like_vs_like] = lvl;
        return m;
    }();
    return names.at(scheme);
}

std::vector<double> encode_features(const TeamSnapshot& first, const TeamSnapshot& second, FeatureScheme scheme) {
    std::vector<double> out;
    out.reserve(feature_names(scheme).size());
    switch (scheme) {
    case FeatureScheme::diff_off_vs_def:
        for (std::size_t k = 0; k < 4; ++k) out.push_back(first.adj_off[k] - second.adj_def[k]);
        for (std::size_t k = 0; k < 4; ++k) out.push_back(second.adj_off[k] - first.adj_def[k]);
        break;
    case FeatureScheme::diff_like_vs_like:
        for (std::size_t k = 0; k < 4; ++k) out.push_back(first.adj_off[k] - second.adj_off[k]);
        for (std::size_t k = 0; k < 4; ++k) out.push_back(first.adj_def[k] - second.adj_def[k]);
        break;
    default:
        append_team(out, first, scheme);
        append_team(out, second, scheme);
        break;
    }
    return out;
}

MatchInstance encode_match(const GameRecord& game, const TeamSnapshot& snap_a, const TeamSnapshot& snap_b,
                           FeatureScheme scheme) {
    check_snapshot(snap_a, game.team_a, game.date);
    check_snapshot(snap_b, game.team_b, game.date);
    MatchInstance inst;
    inst.location = venue_of_first(game.location);
    inst.features = encode_features(snap_a, snap_b, scheme);
    inst.label = label_for_first(game.box_a, game.box_b);
    inst.date = game.date;
    inst.season = game.season;
    inst.first = game.team_a;
    inst.second = game.team_b;
    inst.scheme = scheme;
    return inst;
}

MatchInstance encode_match_swapped(const GameRecord& game, const TeamSnapshot& snap_a, const TeamSnapshot& snap_b,
                                   FeatureScheme scheme) {
    check_snapshot(snap_a, game.team_a, game.date);
    check_snapshot(snap_b, game.team_b, game.date);
    MatchInstance inst;
    inst.location = mirrored(venue_of_first(game.location));
    inst.features = encode_features(snap_b, snap_a, scheme);
    inst.label = label_for_first(game.box_b, game.box_a);
    inst.date = game.date;
    inst.season = game.season;
    inst.first = game.team_b;
    inst.second = game.team_a;
    inst.scheme = scheme;
    return inst;
}

std::vector<MatchInstance> encode_games(const std::vector<GameRecord>& games, const SnapshotSeries& snapshots,
                                        FeatureScheme scheme) {
    std::vector<MatchInstance> out;
    out.reserve(games.size());
    for (const auto& game : games) {
        const auto it = snapshots.find(game.season);
        if (it == snapshots.end()) throw DataError("no snapshots for season " + std::to_string(game.season));
        out.push_back(encode_match(game, it->second.at(game.team_a, game.date), it->second.at(game.team_b, game.date),
                                   scheme));
    }
    return out;
}

Dataset build_dataset(const SeasonStore& store, const SnapshotSeries& snapshots, FeatureScheme scheme,
                      Season test_season) {
    const auto part = season_partition(store, test_season);
    return {encode_games(part.train, snapshots, scheme), encode_games(part.test, snapshots, scheme)};
}

}  // namespace courtcast
