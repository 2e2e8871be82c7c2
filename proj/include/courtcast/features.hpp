#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "courtcast/adjust.hpp"

namespace courtcast {

enum class FeatureScheme { adj_eff, four_factors, adj_four_factors, raw, diff_off_vs_def, diff_like_vs_like };

inline constexpr std::array<FeatureScheme, 6> kAllSchemes = {
    FeatureScheme::adj_eff,         FeatureScheme::four_factors,    FeatureScheme::adj_four_factors,
    FeatureScheme::raw,             FeatureScheme::diff_off_vs_def, FeatureScheme::diff_like_vs_like};

std::string_view to_string(FeatureScheme scheme);
FeatureScheme parse_scheme(std::string_view text);

/// Ordered numeric feature names of a scheme. Location is carried separately.
const std::vector<std::string>& feature_names(FeatureScheme scheme);

struct MatchInstance {
    Venue location = Venue::neutral;  ///< first team's perspective
    std::vector<double> features;
    Label label = Label::loss;  ///< first team's perspective
    Date date;
    Season season = 0;
    TeamId first;
    TeamId second;
    FeatureScheme scheme = FeatureScheme::adj_eff;

    friend bool operator==(const MatchInstance&, const MatchInstance&) = default;
};

/// Feature vector for `first` against `second`, without label or venue.
std::vector<double> encode_features(const TeamSnapshot& first, const TeamSnapshot& second, FeatureScheme scheme);

/// Instance from the canonical first team's perspective. Both snapshots must
/// be the teams' pre-match snapshots dated on the game day.
MatchInstance encode_match(const GameRecord& game, const TeamSnapshot& snap_a, const TeamSnapshot& snap_b,
                           FeatureScheme scheme);

/// Same game seen from team_b's side. Used to check encoder symmetry.
MatchInstance encode_match_swapped(const GameRecord& game, const TeamSnapshot& snap_a, const TeamSnapshot& snap_b,
                                   FeatureScheme scheme);

struct Dataset {
    std::vector<MatchInstance> train;
    std::vector<MatchInstance> test;
};

std::vector<MatchInstance> encode_games(const std::vector<GameRecord>& games, const SnapshotSeries& snapshots,
                                        FeatureScheme scheme);

Dataset build_dataset(const SeasonStore& store, const SnapshotSeries& snapshots, FeatureScheme scheme,
                      Season test_season);

}  // namespace courtcast
