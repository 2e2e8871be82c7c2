#pragma once

#include "courtcast/ingest.hpp"

namespace courtcast {

inline constexpr double kDefaultFtFactor = 0.475;
inline constexpr double kNbaFtFactor = 0.4;

/// Relative importance of the Four Factors. Exposed as metadata only.
struct FourFactorWeights {
    static constexpr double efg = 0.4;
    static constexpr double to = 0.25;
    static constexpr double or_ = 0.2;
    static constexpr double ftr = 0.15;
    static constexpr double sum() { return efg + to + or_ + ftr; }
};

struct Efficiencies {
    double oe = 0.0;
    double de = 0.0;
};

struct FourFactors {
    double efg = 0.0;
    double to_pct = 0.0;
    double or_pct = 0.0;
    double ftr = 0.0;
};

/// Per-game derived statistics for one team.
struct GameStats {
    double possessions = 0.0;
    double oe = 0.0;
    double de = 0.0;
    double efg = 0.0;
    double to_pct = 0.0;
    double or_pct = 0.0;
    double ftr = 0.0;
};

/// 0.96 * (FGA - OR - TO + ft_factor * FTA). Throws std::domain_error when
/// the estimate is not positive or ft_factor is outside (0, 1).
double possessions(const BoxScore& box, double ft_factor = kDefaultFtFactor);

/// Points scored and allowed per 100 of this team's possessions.
Efficiencies raw_efficiencies(const BoxScore& box, const BoxScore& opp_box, double ft_factor = kDefaultFtFactor);

FourFactors four_factors(const BoxScore& box, const BoxScore& opp_box, double poss);

GameStats game_stats(const BoxScore& box, const BoxScore& opp_box, double ft_factor = kDefaultFtFactor);

}  // namespace courtcast
