#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "courtcast/adjust.hpp"
#include "courtcast/models/model.hpp"

namespace courtcast {

struct PythagParams {
    double exponent = 11.5;
    /// When set, the home team's AdjOE is multiplied and its AdjDE divided by this factor.
    std::optional<double> home_multiplier;
};

/// AdjOE^y / (AdjOE^y + AdjDE^y), evaluated in ratio form.
double pythag_rating(double adj_oe, double adj_de, double exponent);
double pythag_rating(const TeamSnapshot& snap, const PythagParams& params);

struct PythagPick {
    TeamId winner;
    double margin = 0.0;  ///< first team's rating minus second team's
};

/// `venue` is the first team's. Equal ratings go to the home team, or to the
/// first team at a neutral site.
PythagPick predict_match_pythag(const TeamSnapshot& first, const TeamSnapshot& second, Venue venue,
                                const PythagParams& params);

/// Win probability of the first team from two Pythagorean ratings (log5).
double log5(double rating_first, double rating_second);

struct RpiComponents {
    int games = 0;
    double wp = 0.0;
    double owp = 0.0;
    double oowp = 0.0;
    double rating = 0.0;
};

/// 0.25 WP + 0.50 OWP + 0.25 OOWP, with opponents' records taken without
/// their games against the team being rated.
std::map<TeamId, RpiComponents> rpi_table(const std::vector<GameRecord>& games);
double rpi(const TeamId& team, const std::vector<GameRecord>& games);

struct RankEntry {
    TeamId team;
    double score = 0.0;
    double mean_p_win = 0.0;
};

/// Sorted by score descending, then mean win probability, then team id.
using Ranking = std::vector<RankEntry>;

/// Win probability of `first` (the lexicographically smaller team) against
/// `second` at a neutral site.
using PairPredictor = std::function<double(const TeamSnapshot& first, const TeamSnapshot& second)>;

/// Every unordered pair is predicted once at a neutral site; a team scores
/// one point per predicted win.
Ranking round_robin_rank(const PairPredictor& predictor, const std::vector<TeamSnapshot>& snapshots);

PairPredictor pythag_pair_predictor(const PythagParams& params);
PairPredictor model_pair_predictor(const TrainedModel& model);

/// Ranking by a per-team score, descending.
Ranking rank_by_score(const std::map<TeamId, double>& scores);

}  // namespace courtcast
