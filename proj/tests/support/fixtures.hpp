#pragma once

#include <string>
#include <vector>

#include "courtcast/ingest.hpp"
#include "courtcast/league.hpp"

namespace fixtures {

inline courtcast::BoxScore box(int fgm, int fga, int fgm3, int ft, int fta, int or_, int dr, int to, int stl = 5,
                               int blk = 3) {
    courtcast::BoxScore b;
    b.fgm = fgm;
    b.fga = fga;
    b.fgm3 = fgm3;
    b.ft = ft;
    b.fta = fta;
    b.or_ = or_;
    b.dr = dr;
    b.to = to;
    b.stl = stl;
    b.blk = blk;
    b.points = b.computed_points();
    return b;
}

/// Plausible box with exactly `points` points.
inline courtcast::BoxScore scoring_box(int points) {
    const int ft = points % 2 == 0 ? 12 : 13;
    const int fgm3 = 6;
    const int fgm = fgm3 + (points - ft - 3 * fgm3) / 2;
    return box(fgm, fgm + 30, fgm3, ft, ft + 6, 10, 24, 12);
}

inline courtcast::GameRecord game(const std::string& date, courtcast::Season season, const std::string& a,
                                  const std::string& b, courtcast::Location loc, int points_a, int points_b) {
    return courtcast::GameRecord::canonical(courtcast::Date::parse(date), season, a, b, loc, scoring_box(points_a),
                                            scoring_box(points_b));
}

/// games_per_team = 6 with 4 teams gives 12 games per season.
inline courtcast::SyntheticLeague small_league(std::uint64_t seed, int seasons = 2, int teams = 4,
                                               int games_per_team = 6, double noise = 0.08) {
    courtcast::SyntheticLeagueSpec spec;
    spec.n_teams = teams;
    spec.games_per_team = games_per_team;
    spec.seasons = seasons;
    spec.noise = noise;
    spec.seed = seed;
    return courtcast::generate_league(spec);
}

/// Noise-free league whose teams differ only in offense, on an evenly spaced
/// ladder with `step` between neighbours. Team order is shuffled so that the
/// canonical first team is not always the stronger one.
inline courtcast::SyntheticLeague separable_league(std::uint64_t seed = 1, double step = 0.02) {
    static constexpr int kLadder[20] = {7, 13, 2, 18, 0, 11, 5, 16, 9, 3, 14, 19, 1, 8, 12, 6, 17, 4, 10, 15};
    courtcast::SyntheticLeagueSpec spec;
    spec.n_teams = 20;
    spec.games_per_team = 25;
    spec.seasons = 3;
    spec.noise = 0.0;
    spec.home_edge = 0.0;
    spec.neutral_fraction = 0.0;
    spec.season_carryover = 1.0;
    spec.seed = seed;
    for (int rung : kLadder) spec.strengths.push_back({step * (rung - 9.5), 0.0});
    return courtcast::generate_league(spec);
}

}  // namespace fixtures
