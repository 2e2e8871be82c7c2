#include "courtcast/adjust.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace courtcast {

namespace {

constexpr std::size_t kAdjustable = 10;
constexpr std::size_t kUnadjustedBase = kAdjustable;
constexpr std::size_t kCountingBase = kUnadjustedBase + 8;
constexpr std::size_t kTracked = kCountingBase + kCountingStatCount;

using StatVector = std::array<double, kTracked>;

// OE is adjusted by the opponent's DE and vice versa; an offensive factor by
// the opponent's matching defensive factor.
constexpr std::size_t counter_of(std::size_t i) {
    if (i == 0) return 1;
    if (i == 1) return 0;
    return i < 6 ? i + 4 : i - 4;
}

struct TeamState {
    StatVector value{};
    StatVector weighted_sum{};
    double total_weight = 1.0;
    int games = 0;
};

StatVector to_vector(const TeamSnapshot& s) {
    StatVector v{};
    v[0] = s.adj_oe;
    v[1] = s.adj_de;
    for (std::size_t k = 0; k < 4; ++k) {
        v[2 + k] = s.adj_off[k];
        v[6 + k] = s.adj_def[k];
        v[kUnadjustedBase + k] = s.off[k];
        v[kUnadjustedBase + 4 + k] = s.def[k];
    }
    std::copy(s.counting.begin(), s.counting.end(), v.begin() + kCountingBase);
    return v;
}

TeamSnapshot to_snapshot(const TeamId& team, Date date, Season season, const TeamState& state) {
    const auto& v = state.value;
    TeamSnapshot s;
    s.team = team;
    s.date = date;
    s.season = season;
    s.games_played = state.games;
    s.adj_oe = v[0];
    s.adj_de = v[1];
    for (std::size_t k = 0; k < 4; ++k) {
        s.adj_off[k] = v[2 + k];
        s.adj_def[k] = v[6 + k];
        s.off[k] = v[kUnadjustedBase + k];
        s.def[k] = v[kUnadjustedBase + 4 + k];
    }
    std::copy(v.begin() + kCountingBase, v.end(), s.counting.begin());
    return s;
}

TeamState seeded_state(const StatVector& seed) {
    TeamState state;
    state.value = seed;
    state.weighted_sum = seed;
    state.total_weight = 1.0;
    return state;
}

// Raw per-game values of every tracked statistic for the team owning `own`.
StatVector raw_game_values(const BoxScore& own, const BoxScore& opp, double ft_factor) {
    const double own_poss = possessions(own, ft_factor);
    const double opp_poss = possessions(opp, ft_factor);
    const auto eff = raw_efficiencies(own, opp, ft_factor);
    const auto off = four_factors(own, opp, own_poss);
    const auto def = four_factors(opp, own, opp_poss);
    const FactorArray off_arr = {off.efg, off.to_pct, off.or_pct, off.ftr};
    const FactorArray def_arr = {def.efg, def.to_pct, def.or_pct, def.ftr};

    StatVector v{};
    v[0] = eff.oe;
    v[1] = eff.de;
    for (std::size_t k = 0; k < 4; ++k) {
        v[2 + k] = off_arr[k];
        v[6 + k] = def_arr[k];
        v[kUnadjustedBase + k] = off_arr[k];
        v[kUnadjustedBase + 4 + k] = def_arr[k];
    }
    const CountingArray counts = {
        double(own.fgm), double(own.fga), double(own.fgm3), double(own.ft),  double(own.fta),    double(own.or_),
        double(own.dr),  double(own.to),  double(own.stl),  double(own.blk), double(own.points), double(opp.points)};
    std::copy(counts.begin(), counts.end(), v.begin() + kCountingBase);
    return v;
}

struct GameUpdate {
    const TeamId* team;
    StatVector raw;
    StatVector values;  // raw with the adjustable block opponent-adjusted
};

class SeasonProcessor {
public:
    SeasonProcessor(const SeasonStore& store, Season season, const AdjustConfig& config,
                    const SeasonSnapshots* previous)
        : store_(store), season_(season), config_(config), previous_(previous) {}

    SeasonSnapshots run() {
        SeasonSnapshots out;
        out.season = season_;
        const StatVector baseline = make_baseline();
        NationalAverages fallback;
        std::copy(baseline.begin(), baseline.begin() + kAdjustable, fallback.values.begin());

        std::map<TeamId, TeamState> states;
        std::set<TeamId> teams = store_.roster(season_);
        for (const auto& team : teams) states.emplace(team, initial_state(team, baseline));

        const auto& games = store_.games(season_);
        if (games.empty()) {
            throw DataError("season " + std::to_string(season_) + " has no games");
        }
        const Date first_day = games.front().date;
        for (const auto& team : teams) {
            out.seed.emplace(team, to_snapshot(team, first_day, season_, states.at(team)));
        }

        std::array<double, kAdjustable> league_sum{};
        std::array<double, 8> raw_factor_sum{};
        CountingArray counting_sum{};
        std::size_t league_count = 0;

        std::size_t i = 0;
        while (i < games.size()) {
            const Date day = games[i].date;
            std::size_t end = i;
            while (end < games.size() && games[end].date == day) ++end;

            NationalAverages nat = fallback;
            if (league_count > 0) {
                for (std::size_t k = 0; k < kAdjustable; ++k) nat.values[k] = league_sum[k] / league_count;
            }
            out.daily_averages.emplace_back(day, nat);

            std::vector<GameUpdate> updates;
            updates.reserve(2 * (end - i));
            for (std::size_t g = i; g < end; ++g) {
                const auto& game = games[g];
                const TeamState& state_a = states.at(game.team_a);
                const TeamState& state_b = states.at(game.team_b);
                out.pre_match[game.team_a].push_back(to_snapshot(game.team_a, day, season_, state_a));
                out.pre_match[game.team_b].push_back(to_snapshot(game.team_b, day, season_, state_b));
                updates.push_back(make_update(game.team_a, game.box_a, game.box_b, nat, state_b));
                updates.push_back(make_update(game.team_b, game.box_b, game.box_a, nat, state_a));
            }

            for (const auto& update : updates) {
                fold(states.at(*update.team), update.values);
                const StatVector& league_source =
                    config_.league_average == LeagueAverageSource::raw ? update.raw : update.values;
                for (std::size_t k = 0; k < kAdjustable; ++k) league_sum[k] += league_source[k];
                for (std::size_t k = 0; k < 8; ++k) raw_factor_sum[k] += update.values[kUnadjustedBase + k];
                for (std::size_t k = 0; k < kCountingStatCount; ++k) {
                    counting_sum[k] += update.values[kCountingBase + k];
                }
                ++league_count;
            }
            i = end;
        }

        const Date last_day = games.back().date;
        for (const auto& team : teams) {
            out.final.emplace(team, to_snapshot(team, last_day, season_, states.at(team)));
        }
        for (std::size_t k = 0; k < kAdjustable; ++k) out.season_averages.values[k] = league_sum[k] / league_count;
        for (std::size_t k = 0; k < 4; ++k) {
            out.season_raw_off[k] = raw_factor_sum[k] / league_count;
            out.season_raw_def[k] = raw_factor_sum[4 + k] / league_count;
        }
        for (std::size_t k = 0; k < kCountingStatCount; ++k) out.season_counting[k] = counting_sum[k] / league_count;
        return out;
    }

private:
    StatVector make_baseline() const {
        StatVector b{};
        if (previous_ == nullptr) {
            const auto& d = config_.defaults;
            b[0] = b[1] = d.efficiency;
            for (std::size_t k = 0; k < 4; ++k) {
                b[2 + k] = b[6 + k] = d.factors[k];
                b[kUnadjustedBase + k] = b[kUnadjustedBase + 4 + k] = d.factors[k];
            }
            std::copy(d.counting.begin(), d.counting.end(), b.begin() + kCountingBase);
            return b;
        }
        std::copy(previous_->season_averages.values.begin(), previous_->season_averages.values.end(), b.begin());
        for (std::size_t k = 0; k < 4; ++k) {
            b[kUnadjustedBase + k] = previous_->season_raw_off[k];
            b[kUnadjustedBase + 4 + k] = previous_->season_raw_def[k];
        }
        std::copy(previous_->season_counting.begin(), previous_->season_counting.end(), b.begin() + kCountingBase);
        return b;
    }

    TeamState initial_state(const TeamId& team, const StatVector& baseline) const {
        if (config_.seeding == Seeding::prior_season && previous_ != nullptr) {
            if (const auto it = previous_->final.find(team); it != previous_->final.end()) {
                return seeded_state(to_vector(it->second));
            }
        }
        return seeded_state(baseline);
    }

    GameUpdate make_update(const TeamId& team, const BoxScore& own, const BoxScore& opp,
                           const NationalAverages& nat, const TeamState& opp_state) const {
        GameUpdate update{&team, raw_game_values(own, opp, config_.ft_factor), {}};
        update.values = update.raw;
        for (std::size_t k = 0; k < kAdjustable; ++k) {
            update.values[k] = adjust_value(update.raw[k], nat.values[k], opp_state.value[counter_of(k)]);
        }
        return update;
    }

    void fold(TeamState& state, const StatVector& values) const {
        ++state.games;
        if (config_.scheme == AveragingScheme::alpha) {
            for (std::size_t k = 0; k < kTracked; ++k) {
                state.value[k] = alpha_update(state.value[k], values[k], config_.alpha);
            }
            return;
        }
        const double weight = state.games + 1.0;
        state.total_weight += weight;
        for (std::size_t k = 0; k < kTracked; ++k) {
            state.weighted_sum[k] += weight * values[k];
            state.value[k] = state.weighted_sum[k] / state.total_weight;
        }
    }

    const SeasonStore& store_;
    Season season_;
    const AdjustConfig& config_;
    const SeasonSnapshots* previous_;
};

}  // namespace

std::string_view to_string(AveragingScheme scheme) {
    return scheme == AveragingScheme::alpha ? "alpha" : "explicit";
}

std::string_view to_string(Seeding seeding) {
    return seeding == Seeding::prior_season ? "prior_season" : "from_scratch";
}

std::string_view to_string(LeagueAverageSource source) {
    return source == LeagueAverageSource::raw ? "raw" : "adjusted";
}

AveragingScheme parse_averaging(std::string_view text) {
    if (text == "alpha") return AveragingScheme::alpha;
    if (text == "explicit") return AveragingScheme::explicit_weights;
    throw ConfigError("unknown averaging scheme '" + std::string(text) + "' (alpha|explicit)");
}

Seeding parse_seeding(std::string_view text) {
    if (text == "prior_season" || text == "prior") return Seeding::prior_season;
    if (text == "from_scratch" || text == "scratch") return Seeding::from_scratch;
    throw ConfigError("unknown seeding '" + std::string(text) + "' (prior|from_scratch)");
}

LeagueAverageSource parse_league_average(std::string_view text) {
    if (text == "raw") return LeagueAverageSource::raw;
    if (text == "adjusted") return LeagueAverageSource::adjusted;
    throw ConfigError("unknown league average source '" + std::string(text) + "' (raw|adjusted)");
}

double adjust_value(double raw, double national_avg, double opp_adjusted_counter) {
    if (!(national_avg > 0.0)) throw std::domain_error("national average must be positive");
    if (!(opp_adjusted_counter > 0.0)) throw std::domain_error("opponent counter-statistic must be positive");
    return raw * national_avg / opp_adjusted_counter;
}

double alpha_update(double pre, double game_value, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in [0, 1]");
    return (1.0 - alpha) * pre + alpha * game_value;
}

double explicit_weighted_average(double prior_season_value, std::span<const double> game_values) {
    double sum = prior_season_value;
    double weight = 1.0;
    for (std::size_t i = 0; i < game_values.size(); ++i) {
        const double w = static_cast<double>(i) + 2.0;
        sum += w * game_values[i];
        weight += w;
    }
    return sum / weight;
}

const TeamSnapshot& SeasonSnapshots::at(const TeamId& team, Date date) const {
    const auto it = pre_match.find(team);
    if (it != pre_match.end()) {
        const auto& list = it->second;
        const auto pos = std::lower_bound(list.begin(), list.end(), date,
                                          [](const TeamSnapshot& s, Date d) { return s.date < d; });
        if (pos != list.end() && pos->date == date) return *pos;
    }
    throw DataError("no pre-match snapshot for " + team + " on " + date.to_string());
}

TeamSnapshot SeasonSnapshots::as_of(const TeamId& team, Date date) const {
    TeamSnapshot snap;
    const auto it = pre_match.find(team);
    bool found = false;
    if (it != pre_match.end()) {
        const auto& list = it->second;
        const auto pos = std::lower_bound(list.begin(), list.end(), date,
                                          [](const TeamSnapshot& s, Date d) { return s.date < d; });
        if (pos != list.end()) {
            snap = *pos;
            found = true;
        }
    }
    if (!found) {
        const auto fin = final.find(team);
        if (fin == final.end()) throw DataError("team " + team + " not in season " + std::to_string(season));
        snap = fin->second;
    }
    snap.date = date;
    return snap;
}

SnapshotSeries run_seasons(const SeasonStore& store, const AdjustConfig& config, Season last_season) {
    SnapshotSeries series;
    const SeasonSnapshots* previous = nullptr;
    for (Season season : store.seasons()) {
        if (season > last_season) break;
        SeasonProcessor processor(store, season, config, previous);
        auto [it, inserted] = series.emplace(season, processor.run());
        previous = &it->second;
    }
    return series;
}

SnapshotSeries run_seasons(const SeasonStore& store, const AdjustConfig& config) {
    const auto seasons = store.seasons();
    if (seasons.empty()) return {};
    return run_seasons(store, config, seasons.back());
}

SeasonSnapshots run_season(const SeasonStore& store, Season season, const AdjustConfig& config) {
    if (!store.has_season(season)) throw DataError("season " + std::to_string(season) + " not in store");
    auto series = run_seasons(store, config, season);
    return std::move(series.at(season));
}

}  // namespace courtcast
