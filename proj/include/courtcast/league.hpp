#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "courtcast/ingest.hpp"

namespace courtcast {

/// Latent scoring strength in points per possession: offense adds to the
/// team's own rate, defense subtracts from the opponent's.
struct LatentStrength {
    double offense = 0.0;
    double defense = 0.0;
    double net() const { return offense + defense; }
};

struct SyntheticLeagueSpec {
    int n_teams = 32;
    int games_per_team = 30;
    int seasons = 3;
    Season first_season = 2008;
    /// Fixed strengths for every season; drawn from strength_spread when empty.
    std::vector<LatentStrength> strengths;
    double strength_spread = 0.08;
    /// Correlation of drawn strengths from one season to the next.
    double season_carryover = 0.8;
    /// Standard deviation of each team's per-game scoring rate.
    double noise = 0.08;
    /// Scoring-rate edge of the home team over the away team.
    double home_edge = 0.03;
    double neutral_fraction = 0.1;
    double pace = 68.0;
    double pace_sd = 3.0;
    /// When set, noise (resp. home_edge) is solved for so these targets hold.
    std::optional<double> target_bayes_accuracy;
    std::optional<double> target_home_win_rate;
    std::uint64_t seed = 1;
};

struct LeagueTruth {
    std::map<Season, std::map<TeamId, LatentStrength>> strengths;
    double noise = 0.0;
    double home_edge = 0.0;
    /// Accuracy of always picking the team with the higher expected scoring
    /// rate, estimated by Monte Carlo over the generated schedule.
    double bayes_accuracy = 0.0;
    std::map<Season, double> bayes_accuracy_by_season;
    /// Probability that the home team wins, averaged over non-neutral games.
    double expected_home_win_rate = 0.0;
    std::size_t monte_carlo_draws = 0;
};

struct SyntheticLeague {
    SeasonStore store;
    LeagueTruth truth;
};

/// Throws ConfigError for infeasible specs (odd team count, fewer than two teams, ...).
SyntheticLeague generate_league(const SyntheticLeagueSpec& spec);

/// Box score with the given points and roughly `pace` possessions whose rates
/// move with `rate` (points per possession). Opponent-dependent fields
/// (dr, stl, blk) are left at zero.
BoxScore synthesize_box(double rate, int points, int pace);

}  // namespace courtcast
