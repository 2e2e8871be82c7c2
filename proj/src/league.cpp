#include "courtcast/league.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "courtcast/models/model.hpp"

namespace courtcast {

namespace {

constexpr double kBaseRate = 1.0;
constexpr std::size_t kMonteCarloDraws = 200000;

struct ScheduledGame {
    Season season;
    Date date;
    int home;  // index of the home team (or first team at a neutral site)
    int away;
    bool neutral;
    double delta = 0.0;  // expected rate of `home` minus that of `away`
};

std::string team_name(int index, int n_teams) {
    const int width = n_teams > 100 ? 3 : 2;
    std::string digits = std::to_string(index);
    return "t" + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') +
           digits;
}

/// Sorted draws of z1 - z2 for standard normals; P(outcome) lookups are
/// binary searches into this sample.
class OutcomeSampler {
public:
    explicit OutcomeSampler(std::uint64_t seed) : draws_(kMonteCarloDraws) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        for (auto& d : draws_) d = normal(rng) - normal(rng);
        std::sort(draws_.begin(), draws_.end());
    }

    /// P(delta + noise * w > 0).
    double p_first(double delta, double noise) const {
        if (noise <= 0.0) return delta >= 0.0 ? 1.0 : 0.0;
        const double cut = -delta / noise;
        const auto above = draws_.end() - std::upper_bound(draws_.begin(), draws_.end(), cut);
        return static_cast<double>(above) / static_cast<double>(draws_.size());
    }

    std::size_t size() const { return draws_.size(); }

private:
    std::vector<double> draws_;
};

double game_delta(const ScheduledGame& g, const std::vector<LatentStrength>& s, double home_edge) {
    const double edge = g.neutral ? 0.0 : home_edge;
    const double home_rate = kBaseRate + s[g.home].offense - s[g.away].defense + 0.5 * edge;
    const double away_rate = kBaseRate + s[g.away].offense - s[g.home].defense - 0.5 * edge;
    return home_rate - away_rate;
}

double bayes_accuracy(const std::vector<ScheduledGame>& games, const std::map<Season, std::vector<LatentStrength>>& s,
                      double noise, double home_edge, const OutcomeSampler& sampler) {
    double sum = 0.0;
    for (const auto& g : games) {
        const double p = sampler.p_first(game_delta(g, s.at(g.season), home_edge), noise);
        sum += std::max(p, 1.0 - p);
    }
    return sum / static_cast<double>(games.size());
}

double home_win_rate(const std::vector<ScheduledGame>& games, const std::map<Season, std::vector<LatentStrength>>& s,
                     double noise, double home_edge, const OutcomeSampler& sampler) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& g : games) {
        if (g.neutral) continue;
        sum += sampler.p_first(game_delta(g, s.at(g.season), home_edge), noise);
        ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

template <typename F>
double bisect(F f, double target, double lo, double hi, bool increasing) {
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool above = f(mid) > target;
        if (above == increasing) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

BoxScore synthesize_box(double rate, int points, int pace) {
    const double q = rate - kBaseRate;
    const double n = static_cast<double>(pace);
    BoxScore box;
    box.points = points;
    box.to = static_cast<int>(std::lround(n * std::clamp(0.19 - 0.25 * q, 0.04, 0.40)));
    box.fta = static_cast<int>(std::lround(n * std::clamp(0.30 + 0.25 * q, 0.05, 0.90)));
    box.ft = std::min(points, static_cast<int>(std::lround(0.7 * box.fta)));

    int fg_points = points - box.ft;
    box.fgm3 = static_cast<int>(std::lround(0.3 * fg_points / 3.0));
    if ((fg_points - 3 * box.fgm3) % 2 != 0) {
        if (box.fgm3 > 0) {
            --box.fgm3;
        } else {
            ++box.ft;
            box.fta = std::max(box.fta, box.ft);
            --fg_points;
        }
    }
    box.fgm = box.fgm3 + (fg_points - 3 * box.fgm3) / 2;

    const double or_rate = std::clamp(0.30 + 0.3 * q, 0.05, 0.70);
    // choose attempts so the box-score possession estimate lands near `pace`
    const double k = n / 0.96 + box.to - 0.475 * box.fta;
    const int fga = static_cast<int>(std::ceil((k - or_rate * box.fgm) / (1.0 - or_rate)));
    box.fga = std::max(fga, box.fgm + 1);
    box.or_ = static_cast<int>(std::lround(or_rate * (box.fga - box.fgm)));
    return box;
}

SyntheticLeague generate_league(const SyntheticLeagueSpec& spec) {
    if (spec.n_teams < 2) throw ConfigError("a league needs at least two teams");
    if (spec.n_teams % 2 != 0) throw ConfigError("team count must be even so every round pairs all teams");
    if (spec.games_per_team < 1) throw ConfigError("games_per_team must be positive");
    if (spec.seasons < 1) throw ConfigError("seasons must be positive");
    if (spec.noise < 0.0) throw ConfigError("noise must be non-negative");
    if (spec.neutral_fraction < 0.0 || spec.neutral_fraction > 1.0) throw ConfigError("neutral_fraction outside [0, 1]");
    if (!spec.strengths.empty() && static_cast<int>(spec.strengths.size()) != spec.n_teams) {
        throw ConfigError("strength list length differs from n_teams");
    }
    if (spec.pace < 20.0) throw ConfigError("pace too small");

    const int n = spec.n_teams;
    std::mt19937_64 schedule_rng(mix_seed(spec.seed, 11));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;

    std::map<Season, std::vector<LatentStrength>> strengths;
    std::vector<ScheduledGame> schedule;
    std::vector<LatentStrength> current(static_cast<std::size_t>(n));
    for (int s = 0; s < spec.seasons; ++s) {
        const Season season = spec.first_season + s;
        if (!spec.strengths.empty()) {
            current = spec.strengths;
        } else {
            const double keep = s == 0 ? 0.0 : spec.season_carryover;
            const double fresh = std::sqrt(std::max(0.0, 1.0 - keep * keep));
            for (auto& t : current) {
                t.offense = keep * t.offense + fresh * spec.strength_spread * normal(schedule_rng);
                t.defense = keep * t.defense + fresh * spec.strength_spread * normal(schedule_rng);
            }
        }
        strengths[season] = current;

        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), schedule_rng);
        const Date opening = Date(season - 1, 11, 10);
        for (int round = 0; round < spec.games_per_team; ++round) {
            if (round % (n - 1) == 0 && round > 0) std::shuffle(order.begin() + 1, order.end(), schedule_rng);
            const Date day = opening.plus_days(2 * round);
            for (int i = 0; i < n / 2; ++i) {
                int x = order[static_cast<std::size_t>(i)];
                int y = order[static_cast<std::size_t>(n - 1 - i)];
                if (unit(schedule_rng) < 0.5) std::swap(x, y);
                const bool neutral = unit(schedule_rng) < spec.neutral_fraction;
                schedule.push_back({season, day, x, y, neutral});
            }
            std::rotate(order.begin() + 1, order.end() - 1, order.end());
        }
    }

    const OutcomeSampler sampler(mix_seed(spec.seed, 12));
    double noise = spec.noise;
    double home_edge = spec.home_edge;
    for (int pass = 0; pass < 6; ++pass) {
        if (spec.target_bayes_accuracy) {
            const double target = *spec.target_bayes_accuracy;
            if (!(target > 0.5 && target < 1.0)) throw ConfigError("target Bayes accuracy must lie in (0.5, 1)");
            noise = bisect([&](double v) { return bayes_accuracy(schedule, strengths, v, home_edge, sampler); },
                           target, 1e-6, 3.0, false);
        }
        if (spec.target_home_win_rate) {
            const double target = *spec.target_home_win_rate;
            if (!(target > 0.0 && target < 1.0)) throw ConfigError("target home win rate must lie in (0, 1)");
            home_edge = bisect([&](double v) { return home_win_rate(schedule, strengths, noise, v, sampler); },
                               target, -1.0, 1.0, true);
        }
        if (!(spec.target_bayes_accuracy && spec.target_home_win_rate)) break;
    }

    SyntheticLeague league;
    league.truth.noise = noise;
    league.truth.home_edge = home_edge;
    league.truth.monte_carlo_draws = sampler.size();
    league.truth.bayes_accuracy = bayes_accuracy(schedule, strengths, noise, home_edge, sampler);
    league.truth.expected_home_win_rate = home_win_rate(schedule, strengths, noise, home_edge, sampler);
    for (const auto& [season, list] : strengths) {
        std::vector<ScheduledGame> in_season;
        for (const auto& g : schedule) {
            if (g.season == season) in_season.push_back(g);
        }
        league.truth.bayes_accuracy_by_season[season] = bayes_accuracy(in_season, strengths, noise, home_edge, sampler);
        for (int i = 0; i < n; ++i) league.truth.strengths[season][team_name(i, n)] = list[static_cast<std::size_t>(i)];
    }

    std::mt19937_64 game_rng(mix_seed(spec.seed, 13));
    std::vector<GameRecord> games;
    games.reserve(schedule.size());
    for (const auto& g : schedule) {
        const auto& s = strengths.at(g.season);
        const double edge = g.neutral ? 0.0 : home_edge;
        const double home_rate = kBaseRate + s[g.home].offense - s[g.away].defense + 0.5 * edge + noise * normal(game_rng);
        const double away_rate = kBaseRate + s[g.away].offense - s[g.home].defense - 0.5 * edge + noise * normal(game_rng);
        const int pace = std::max(40, static_cast<int>(std::lround(spec.pace + spec.pace_sd * normal(game_rng))));

        const double home_clamped = std::clamp(home_rate, 0.3, 2.0);
        const double away_clamped = std::clamp(away_rate, 0.3, 2.0);
        int home_points = static_cast<int>(std::lround(home_clamped * pace));
        int away_points = static_cast<int>(std::lround(away_clamped * pace));
        if (home_points == away_points) {
            // the team with the higher unrounded rate takes the extra free throw
            (home_rate >= away_rate ? home_points : away_points) += 1;
        }
        BoxScore home_box = synthesize_box(home_clamped, home_points, pace);
        BoxScore away_box = synthesize_box(away_clamped, away_points, pace);
        if (home_points - home_box.computed_points() != 0 || away_points - away_box.computed_points() != 0) {
            throw InvariantError("synthesized box does not add up");
        }
        if (home_box.ft > home_box.fta) home_box.fta = home_box.ft;
        if (away_box.ft > away_box.fta) away_box.fta = away_box.ft;
        home_box.dr = (away_box.fga - away_box.fgm) - away_box.or_;
        away_box.dr = (home_box.fga - home_box.fgm) - home_box.or_;
        home_box.stl = static_cast<int>(std::lround(0.5 * away_box.to));
        away_box.stl = static_cast<int>(std::lround(0.5 * home_box.to));
        home_box.blk = static_cast<int>(std::lround(0.08 * (away_box.fga - away_box.fgm)));
        away_box.blk = static_cast<int>(std::lround(0.08 * (home_box.fga - home_box.fgm)));

        const Location loc = g.neutral ? Location::neutral : Location::home_a;
        games.push_back(GameRecord::canonical(g.date, g.season, team_name(g.home, n), team_name(g.away, n), loc,
                                              home_box, away_box));
    }
    league.store = SeasonStore(std::move(games));
    return league;
}

}  // namespace courtcast
