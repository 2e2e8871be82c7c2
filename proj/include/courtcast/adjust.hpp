#pragma once

#include <array>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "courtcast/ingest.hpp"
#include "courtcast/stats.hpp"

namespace courtcast {

enum class AveragingScheme { alpha, explicit_weights };
enum class Seeding { prior_season, from_scratch };
/// Which per-game values feed the league-wide means used for adjustment.
enum class LeagueAverageSource { raw, adjusted };

std::string_view to_string(AveragingScheme scheme);
std::string_view to_string(Seeding seeding);
std::string_view to_string(LeagueAverageSource source);
AveragingScheme parse_averaging(std::string_view text);
Seeding parse_seeding(std::string_view text);
LeagueAverageSource parse_league_average(std::string_view text);

/// eFG%, TO%, OR%, FTR in that order.
using FactorArray = std::array<double, 4>;
inline constexpr std::array<std::string_view, 4> kFactorNames = {"efg", "to", "or", "ftr"};

/// Season-to-date box-score means: the ten counting stats, then points scored and allowed.
inline constexpr std::size_t kCountingStatCount = 12;
using CountingArray = std::array<double, kCountingStatCount>;
inline constexpr std::array<std::string_view, kCountingStatCount> kCountingNames = {
    "fgm", "fga", "fgm3", "ft", "fta", "or", "dr", "to", "stl", "blk", "ppg", "pag"};

/// A team's averaged statistics as of the morning of `date`.
struct TeamSnapshot {
    TeamId team;
    Date date;
    Season season = 0;
    int games_played = 0;
    double adj_oe = 0.0;
    double adj_de = 0.0;
    FactorArray adj_off{};  ///< adjusted offensive factors
    FactorArray adj_def{};  ///< adjusted factors allowed
    FactorArray off{};      ///< unadjusted, averaged the same way
    FactorArray def{};
    CountingArray counting{};

    friend bool operator==(const TeamSnapshot&, const TeamSnapshot&) = default;
};

/// League means of the ten adjustable statistics: OE, DE, offensive factors, defensive factors.
struct NationalAverages {
    std::array<double, 10> values{};

    double oe() const { return values[0]; }
    double de() const { return values[1]; }
    friend bool operator==(const NationalAverages&, const NationalAverages&) = default;
};

/// Starting values used when no earlier data exists at all.
struct SeedDefaults {
    double efficiency = 100.0;
    FactorArray factors = {0.50, 0.19, 0.31, 0.35};
    CountingArray counting = {24, 56, 6, 13, 19, 10, 24, 13, 6, 3, 67, 67};
};

struct AdjustConfig {
    AveragingScheme scheme = AveragingScheme::explicit_weights;
    Seeding seeding = Seeding::prior_season;
    double alpha = 0.2;
    double ft_factor = kDefaultFtFactor;
    LeagueAverageSource league_average = LeagueAverageSource::raw;
    SeedDefaults defaults{};
};

/// raw * national_avg / opp_adjusted_counter.
double adjust_value(double raw, double national_avg, double opp_adjusted_counter);

/// (1 - alpha) * pre + alpha * game_value.
double alpha_update(double pre, double game_value, double alpha);

/// Prior carries weight 1 and the i-th game (1-based) weight i + 1; the sum is
/// normalized by the total weight.
double explicit_weighted_average(double prior_season_value, std::span<const double> game_values);

/// Output of one processed season.
struct SeasonSnapshots {
    Season season = 0;
    /// Pre-match snapshot of every game a team played, chronologically.
    std::map<TeamId, std::vector<TeamSnapshot>> pre_match;
    /// Start-of-season values and end-of-season values for every roster team.
    std::map<TeamId, TeamSnapshot> seed;
    std::map<TeamId, TeamSnapshot> final;
    /// League means in effect on each game day.
    std::vector<std::pair<Date, NationalAverages>> daily_averages;
    /// League means over the full season; fallback for the next season's first day.
    NationalAverages season_averages;
    FactorArray season_raw_off{};
    FactorArray season_raw_def{};
    CountingArray season_counting{};

    /// Pre-match snapshot for a game played by `team` on `date`.
    const TeamSnapshot& at(const TeamId& team, Date date) const;
    /// State as of the morning of any date, restamped with that date.
    TeamSnapshot as_of(const TeamId& team, Date date) const;
};

using SnapshotSeries = std::map<Season, SeasonSnapshots>;

/// Processes every stored season up to and including `last_season`, in order,
/// so that prior-season seeding has its inputs.
SnapshotSeries run_seasons(const SeasonStore& store, const AdjustConfig& config, Season last_season);
SnapshotSeries run_seasons(const SeasonStore& store, const AdjustConfig& config);

SeasonSnapshots run_season(const SeasonStore& store, Season season, const AdjustConfig& config);

}  // namespace courtcast
