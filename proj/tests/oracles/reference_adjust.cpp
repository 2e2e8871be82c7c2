#include "reference_adjust.hpp"

#include <stdexcept>

namespace oracle {

using namespace courtcast;

namespace {

double poss(const BoxScore& b, double f) { return 0.96 * (b.fga - b.or_ - b.to + f * b.fta); }

// index of the opponent statistic that adjusts statistic k
std::size_t counter(std::size_t k) {
    if (k == 0) return 1;
    if (k == 1) return 0;
    if (k < 6) return k + 4;
    return k - 4;
}

}  // namespace

ReferenceAdjuster::ReferenceAdjuster(const SeasonStore& store, const AdjustConfig& config)
    : store_(store), config_(config) {
    if (config.league_average != LeagueAverageSource::raw) throw std::invalid_argument("reference uses raw means only");
}

Values ReferenceAdjuster::game_values(const GameRecord& game, bool side_a) const {
    const BoxScore& own = side_a ? game.box_a : game.box_b;
    const BoxScore& opp = side_a ? game.box_b : game.box_a;
    const double f = config_.ft_factor;
    const double p_own = poss(own, f);
    const double p_opp = poss(opp, f);
    Values v{};
    v[0] = own.points * 100.0 / p_own;
    v[1] = opp.points * 100.0 / p_own;
    v[2] = (own.fgm + 0.5 * own.fgm3) / own.fga;
    v[3] = own.to / p_own;
    v[4] = static_cast<double>(own.or_) / (own.or_ + opp.dr);
    v[5] = static_cast<double>(own.fta) / own.fga;
    v[6] = (opp.fgm + 0.5 * opp.fgm3) / opp.fga;
    v[7] = opp.to / p_opp;
    v[8] = static_cast<double>(opp.or_) / (opp.or_ + own.dr);
    v[9] = static_cast<double>(opp.fta) / opp.fga;
    return v;
}

Values ReferenceAdjuster::baseline(Season season) const {
    const auto seasons = store_.seasons();
    Season previous = 0;
    bool found = false;
    for (Season s : seasons) {
        if (s < season) {
            previous = s;
            found = true;
        }
    }
    if (!found) {
        const auto& d = config_.defaults;
        Values v{};
        v[0] = v[1] = d.efficiency;
        for (std::size_t k = 0; k < 4; ++k) v[2 + k] = v[6 + k] = d.factors[k];
        return v;
    }
    Values sum{};
    std::size_t n = 0;
    for (const auto& g : store_.games(previous)) {
        for (bool side : {true, false}) {
            const Values v = game_values(g, side);
            for (std::size_t k = 0; k < 10; ++k) sum[k] += v[k];
            ++n;
        }
    }
    for (auto& x : sum) x /= n;
    return sum;
}

Values ReferenceAdjuster::national(Season season, Date date) const {
    Values sum{};
    std::size_t n = 0;
    for (const auto& g : store_.games(season)) {
        if (!(g.date < date)) continue;
        for (bool side : {true, false}) {
            const Values v = game_values(g, side);
            for (std::size_t k = 0; k < 10; ++k) sum[k] += v[k];
            ++n;
        }
    }
    if (n == 0) return baseline(season);
    for (auto& x : sum) x /= n;
    return sum;
}

Values ReferenceAdjuster::seed(Season season, const TeamId& team) const {
    if (config_.seeding == Seeding::prior_season) {
        Season previous = 0;
        bool found = false;
        for (Season s : store_.seasons()) {
            if (s < season) {
                previous = s;
                found = true;
            }
        }
        if (found && store_.roster(previous).contains(team)) return end_of_season(previous, team).values;
    }
    return baseline(season);
}

ReferenceState ReferenceAdjuster::morning(Season season, const TeamId& team, Date date) const {
    ReferenceState state;
    const Values start = seed(season, team);
    state.values = start;
    Values weighted = start;
    double total = 1.0;
    for (const auto& g : store_.games(season)) {
        if (!(g.date < date)) continue;
        const bool side_a = g.team_a == team;
        if (!side_a && g.team_b != team) continue;
        const TeamId& opponent = side_a ? g.team_b : g.team_a;
        const Values raw = game_values(g, side_a);
        const Values nat = national(season, g.date);
        const Values opp = morning(season, opponent, g.date).values;
        Values adjusted{};
        for (std::size_t k = 0; k < 10; ++k) adjusted[k] = raw[k] * nat[k] / opp[counter(k)];

        ++state.games;
        if (config_.scheme == AveragingScheme::alpha) {
            for (std::size_t k = 0; k < 10; ++k) {
                state.values[k] = (1.0 - config_.alpha) * state.values[k] + config_.alpha * adjusted[k];
            }
        } else {
            const double w = state.games + 1.0;
            total += w;
            for (std::size_t k = 0; k < 10; ++k) {
                weighted[k] += w * adjusted[k];
                state.values[k] = weighted[k] / total;
            }
        }
    }
    return state;
}

ReferenceState ReferenceAdjuster::end_of_season(Season season, const TeamId& team) const {
    return morning(season, team, store_.games(season).back().date.plus_days(1));
}

}  // namespace oracle
