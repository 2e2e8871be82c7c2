#include "courtcast/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace courtcast {

double possessions(const BoxScore& box, double ft_factor) {
    if (!(ft_factor > 0.0 && ft_factor < 1.0)) {
        throw std::domain_error("ft_factor must lie in (0, 1)");
    }
    const double poss = 0.96 * (box.fga - box.or_ - box.to + ft_factor * box.fta);
    if (!(poss > 0.0)) throw std::domain_error("non-positive possessions");
    return poss;
}

Efficiencies raw_efficiencies(const BoxScore& box, const BoxScore& opp_box, double ft_factor) {
    const double poss = possessions(box, ft_factor);
    return {box.points * 100.0 / poss, opp_box.points * 100.0 / poss};
}

FourFactors four_factors(const BoxScore& box, const BoxScore& opp_box, double poss) {
    if (box.fga <= 0) throw std::domain_error("eFG% and FTR undefined: no field goal attempts");
    if (!(poss > 0.0)) throw std::domain_error("TO% undefined: non-positive possessions");
    const int rebound_chances = box.or_ + opp_box.dr;
    if (rebound_chances <= 0) throw std::domain_error("OR% undefined: no rebounds available");
    return {
        (box.fgm + 0.5 * box.fgm3) / box.fga,
        box.to / poss,
        static_cast<double>(box.or_) / rebound_chances,
        static_cast<double>(box.fta) / box.fga,
    };
}

GameStats game_stats(const BoxScore& box, const BoxScore& opp_box, double ft_factor) {
    const double poss = possessions(box, ft_factor);
    const auto ff = four_factors(box, opp_box, poss);
    return {poss, box.points * 100.0 / poss, opp_box.points * 100.0 / poss, ff.efg, ff.to_pct, ff.or_pct, ff.ftr};
}

}  // namespace courtcast
