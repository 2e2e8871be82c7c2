#include "courtcast/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace courtcast {

double pythag_rating(double adj_oe, double adj_de, double exponent) {
    if (!(adj_oe > 0.0) || !(adj_de > 0.0)) throw std::domain_error("Pythagorean rating needs positive AdjOE and AdjDE");
    if (!(exponent > 0.0)) throw std::domain_error("Pythagorean exponent must be positive");
    // the weaker side is taken as the exact complement so that swapping OE and DE sums to 1
    if (adj_oe >= adj_de) return 1.0 / (1.0 + std::pow(adj_de / adj_oe, exponent));
    return 1.0 - 1.0 / (1.0 + std::pow(adj_oe / adj_de, exponent));
}

double pythag_rating(const TeamSnapshot& snap, const PythagParams& params) {
    return pythag_rating(snap.adj_oe, snap.adj_de, params.exponent);
}

PythagPick predict_match_pythag(const TeamSnapshot& first, const TeamSnapshot& second, Venue venue,
                                const PythagParams& params) {
    auto rating = [&](const TeamSnapshot& s, bool home) {
        if (home && params.home_multiplier) {
            return pythag_rating(s.adj_oe * *params.home_multiplier, s.adj_de / *params.home_multiplier,
                                 params.exponent);
        }
        return pythag_rating(s, params);
    };
    const double r1 = rating(first, venue == Venue::home);
    const double r2 = rating(second, venue == Venue::away);
    const double margin = r1 - r2;
    bool first_wins = margin > 0.0;
    if (margin == 0.0) first_wins = venue != Venue::away;
    return {first_wins ? first.team : second.team, margin};
}

double log5(double a, double b) {
    const double num = a * (1.0 - b);
    const double den = num + b * (1.0 - a);
    if (den <= 0.0) return a > b ? 1.0 : (a < b ? 0.0 : 0.5);
    return num / den;
}

std::map<TeamId, RpiComponents> rpi_table(const std::vector<GameRecord>& games) {
    // per team: list of (opponent, won)
    std::map<TeamId, std::vector<std::pair<TeamId, bool>>> results;
    for (const auto& g : games) {
        const bool a_won = g.a_won();
        results[g.team_a].emplace_back(g.team_b, a_won);
        results[g.team_b].emplace_back(g.team_a, !a_won);
    }

    auto wp_excluding = [&](const TeamId& team, const TeamId& excluded) -> std::optional<double> {
        int wins = 0;
        int played = 0;
        for (const auto& [opp, won] : results.at(team)) {
            if (opp == excluded) continue;
            ++played;
            wins += won ? 1 : 0;
        }
        if (played == 0) return std::nullopt;
        return static_cast<double>(wins) / played;
    };

    std::map<TeamId, RpiComponents> table;
    for (const auto& [team, list] : results) {
        RpiComponents c;
        c.games = static_cast<int>(list.size());
        int wins = 0;
        double owp_sum = 0.0;
        int owp_n = 0;
        for (const auto& [opp, won] : list) {
            wins += won ? 1 : 0;
            if (auto wp = wp_excluding(opp, team)) {
                owp_sum += *wp;
                ++owp_n;
            }
        }
        c.wp = static_cast<double>(wins) / c.games;
        c.owp = owp_n > 0 ? owp_sum / owp_n : 0.5;
        table.emplace(team, c);
    }
    for (auto& [team, c] : table) {
        double sum = 0.0;
        for (const auto& [opp, won] : results.at(team)) sum += table.at(opp).owp;
        c.oowp = sum / c.games;
        c.rating = 0.25 * c.wp + 0.50 * c.owp + 0.25 * c.oowp;
    }
    return table;
}

double rpi(const TeamId& team, const std::vector<GameRecord>& games) {
    const auto table = rpi_table(games);
    const auto it = table.find(team);
    if (it == table.end()) throw DataError("RPI undefined for " + team + ": no games played");
    return it->second.rating;
}

namespace {

void sort_ranking(Ranking& ranking) {
    std::sort(ranking.begin(), ranking.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.mean_p_win != b.mean_p_win) return a.mean_p_win > b.mean_p_win;
        return a.team < b.team;
    });
}

}  // namespace

Ranking round_robin_rank(const PairPredictor& predictor, const std::vector<TeamSnapshot>& snapshots) {
    if (snapshots.size() < 2) throw DataError("ranking needs at least two teams");
    std::vector<TeamSnapshot> teams = snapshots;
    std::sort(teams.begin(), teams.end(), [](const auto& a, const auto& b) { return a.team < b.team; });
    for (std::size_t i = 1; i < teams.size(); ++i) {
        if (teams[i].team == teams[i - 1].team) throw DataError("team listed twice: " + teams[i].team);
    }

    const std::size_t n = teams.size();
    std::vector<double> wins(n, 0.0);
    std::vector<double> p_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = predictor(teams[i], teams[j]);
            if (decide(p, Venue::neutral) == Label::win) {
                wins[i] += 1.0;
            } else {
                wins[j] += 1.0;
            }
            p_sum[i] += p;
            p_sum[j] += 1.0 - p;
        }
    }
    Ranking ranking;
    for (std::size_t i = 0; i < n; ++i) {
        ranking.push_back({teams[i].team, wins[i], p_sum[i] / static_cast<double>(n - 1)});
    }
    sort_ranking(ranking);
    return ranking;
}

PairPredictor pythag_pair_predictor(const PythagParams& params) {
    return [params](const TeamSnapshot& first, const TeamSnapshot& second) {
        return log5(pythag_rating(first, params), pythag_rating(second, params));
    };
}

PairPredictor model_pair_predictor(const TrainedModel& model) {
    return [&model](const TeamSnapshot& first, const TeamSnapshot& second) {
        return model.predict(Venue::neutral, encode_features(first, second, model.scheme())).p_win;
    };
}

Ranking rank_by_score(const std::map<TeamId, double>& scores) {
    Ranking ranking;
    for (const auto& [team, score] : scores) ranking.push_back({team, score, score});
    sort_ranking(ranking);
    return ranking;
}

}  // namespace courtcast
