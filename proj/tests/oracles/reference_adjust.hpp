#pragma once

#include <array>
#include <vector>

#include "courtcast/adjust.hpp"
#include "courtcast/ingest.hpp"

namespace oracle {

// [adj_oe, adj_de, adj_off x4, adj_def x4]
using Values = std::array<double, 10>;

struct ReferenceState {
    int games = 0;
    Values values{};
};

/// Straightforward recomputation of the day-by-day adjustment: every query
/// replays the team's season from its seed, asking for each opponent's state
/// on the morning of the game and for the league means of earlier days.
/// Nothing is cached. Only raw league means are supported.
class ReferenceAdjuster {
public:
    ReferenceAdjuster(const courtcast::SeasonStore& store, const courtcast::AdjustConfig& config);

    ReferenceState morning(courtcast::Season season, const courtcast::TeamId& team, courtcast::Date date) const;
    ReferenceState end_of_season(courtcast::Season season, const courtcast::TeamId& team) const;
    Values national(courtcast::Season season, courtcast::Date date) const;

private:
    Values baseline(courtcast::Season season) const;
    Values seed(courtcast::Season season, const courtcast::TeamId& team) const;
    Values game_values(const courtcast::GameRecord& game, bool side_a) const;
    const courtcast::SeasonStore& store_;
    courtcast::AdjustConfig config_;
};

}  // namespace oracle
