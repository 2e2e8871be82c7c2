#include "courtcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace courtcast;

namespace {

MatchInstance instance(const std::string& date, Label label, Venue venue = Venue::home) {
    MatchInstance m;
    m.date = Date::parse(date);
    m.label = label;
    m.location = venue;
    m.first = "a";
    m.second = "b";
    m.features = {1.0, 2.0, 3.0, 4.0};
    return m;
}

SyntheticLeague league_for_eval(std::uint64_t seed, double noise) {
    SyntheticLeagueSpec spec;
    spec.n_teams = 16;
    spec.games_per_team = 24;
    spec.seasons = 3;
    spec.noise = noise;
    spec.seed = seed;
    return generate_league(spec);
}

SeasonStore truncate(const SeasonStore& store, Date last_day) {
    std::vector<GameRecord> kept;
    std::map<Season, std::set<TeamId>> rosters;
    for (const auto& [season, games] : store.all()) {
        rosters[season] = store.roster(season);
        for (const auto& g : games) {
            if (g.date <= last_day) kept.push_back(g);
        }
    }
    return SeasonStore(kept, rosters);
}

}  // namespace

TEST_CASE("an oracle that echoes the label scores one everywhere") {
    std::vector<MatchInstance> test;
    for (int d = 1; d <= 9; ++d) {
        test.push_back(instance("2011-01-0" + std::to_string(d), d % 3 == 0 ? Label::loss : Label::win));
        test.push_back(instance("2011-01-0" + std::to_string(d), Label::loss, Venue::away));
    }
    const auto report = evaluate_instances(
        EvalConfig{}, test, [](const MatchInstance& m) { return m.label == Label::win ? 1.0 : 0.0; });
    CHECK(report.accuracy == 1.0);
    CHECK(report.curve.size() == 9);
    for (const auto& p : report.curve) CHECK(p.accuracy == 1.0);
    CHECK(report.confusion.false_win == 0);
    CHECK(report.confusion.false_loss == 0);
    CHECK(report.confusion.total() == 18);
}

TEST_CASE("cumulative accuracy curve") {
    std::vector<PredictionRecord> preds(2);
    preds[0].date = Date(2011, 1, 1);
    preds[0].predicted = Label::win;
    preds[0].actual = Label::loss;
    preds[1].date = Date(2011, 1, 2);
    const auto curve = accuracy_curve(preds);
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].accuracy == 0.0);
    CHECK(curve[1].accuracy == 0.5);
    CHECK(curve[1].predictions == 2);
    CHECK_THROWS_AS(accuracy_curve(std::vector<PredictionRecord>{}), DataError);
    CHECK_THROWS_AS(summarize(EvalConfig{}, {}, 0), DataError);
}

TEST_CASE("summary and curve agree on a real evaluation") {
    const auto league = league_for_eval(3, 0.08);
    EvalConfig cfg;
    cfg.test_season = league.store.seasons().back();
    const auto report = walk_forward_evaluate(league.store, cfg);
    CHECK(report.predictions.size() == league.store.games(cfg.test_season).size());
    CHECK(report.train_rows == 2 * league.store.games(cfg.test_season).size());
    std::size_t hits = 0;
    for (const auto& p : report.predictions) hits += p.correct() ? 1 : 0;
    CHECK(report.accuracy == static_cast<double>(hits) / static_cast<double>(report.predictions.size()));
    CHECK(report.curve.back().accuracy == report.accuracy);
    CHECK(report.curve.back().predictions == report.predictions.size());
    CHECK(std::is_sorted(report.predictions.begin(), report.predictions.end(),
                         [](const auto& a, const auto& b) { return a.date < b.date; }));

    const auto again = walk_forward_evaluate(league.store, cfg);
    CHECK(again.predictions == report.predictions);
    CHECK(again.curve == report.curve);
}

TEST_CASE("later results never move earlier predictions") {
    const auto league = league_for_eval(5, 0.08);
    EvalConfig cfg;
    cfg.test_season = league.store.seasons().back();
    cfg.kind = ModelKind::random_forest;
    const auto full = walk_forward_evaluate(league.store, cfg);
    const auto& test_games = league.store.games(cfg.test_season);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 4; ++trial) {
        const Date cut = test_games[std::uniform_int_distribution<std::size_t>(0, test_games.size() - 1)(rng)].date;
        const auto partial = walk_forward_evaluate(truncate(league.store, cut), cfg);
        std::size_t compared = 0;
        for (const auto& p : full.predictions) {
            if (p.date > cut) continue;
            REQUIRE(compared < partial.predictions.size());
            CHECK(partial.predictions[compared] == p);
            ++compared;
        }
        CHECK(compared == partial.predictions.size());
    }
}

TEST_CASE("home predictor recovers the league's home win rate") {
    SyntheticLeagueSpec spec;
    spec.n_teams = 60;
    spec.games_per_team = 40;
    spec.seasons = 2;
    spec.neutral_fraction = 0.0;
    spec.target_home_win_rate = 0.63;
    const auto league = generate_league(spec);
    EvalConfig cfg;
    cfg.predictor = PredictorKind::home;
    cfg.test_season = league.store.seasons().back();
    const auto report = walk_forward_evaluate(league.store, cfg);
    CHECK(report.predictions.size() == 1200);
    CHECK(std::abs(report.accuracy - 0.63) <= 0.02);
    CHECK(report.train_rows == 0);
}

TEST_CASE("noise-free league is learnable") {
    const auto league = fixtures::separable_league();
    EvalConfig cfg;
    cfg.test_season = league.store.seasons().back();
    const auto report = walk_forward_evaluate(league.store, cfg);
    CHECK(report.train_rows == 500);
    CHECK(report.accuracy >= 0.95);

    cfg.predictor = PredictorKind::pythag;
    CHECK(walk_forward_evaluate(league.store, cfg).accuracy >= 0.95);
}

TEST_CASE("predictor names and errors") {
    for (auto k : {PredictorKind::model, PredictorKind::home, PredictorKind::pythag}) {
        CHECK(parse_predictor_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_predictor_kind("coin"), ConfigError);
    const auto league = fixtures::small_league(2);
    EvalConfig cfg;
    cfg.test_season = 1999;
    CHECK_THROWS_AS(walk_forward_evaluate(league.store, cfg), DataError);
}

TEST_CASE("binomial interval") {
    CHECK(std::abs(binomial_half_width(0.75, 480) - 0.05090929664387352) < 1e-12);
    CHECK(binomial_half_width(0.5, 100, 1.0) == doctest::Approx(0.05));
    CHECK_THROWS_AS(binomial_half_width(0.5, 0), std::domain_error);
}

TEST_CASE("glass ceiling on a small league") {
    SyntheticLeagueSpec spec;
    spec.n_teams = 12;
    spec.games_per_team = 20;
    spec.seasons = 2;
    spec.target_bayes_accuracy = 0.75;
    const auto report = glass_ceiling_experiment(spec, EvalConfig{}, {ModelKind::naive_bayes_kde},
                                                 {FeatureScheme::adj_eff, FeatureScheme::raw});
    CHECK(report.test_season == spec.first_season + 1);
    REQUIRE(report.cells.size() == 2);
    for (const auto& c : report.cells) {
        CHECK(c.bound == report.truth.bayes_accuracy);
        CHECK(c.cell.total == 120);
        CHECK(c.half_width == binomial_half_width(c.bound, 120));
        CHECK(c.gap() == c.cell.accuracy - c.bound);
        CHECK(c.within_bound() == (c.cell.accuracy <= c.bound + c.half_width));
    }
    spec.seasons = 1;
    CHECK_THROWS_AS(glass_ceiling_experiment(spec, EvalConfig{}, {ModelKind::mlp}, {FeatureScheme::adj_eff}),
                    ConfigError);

    std::ostringstream out;
    write_ceiling_csv(out, report);
    CHECK(out.str().rfind("# league bayes_accuracy=", 0) == 0);
    CHECK(out.str().find("kind,scheme,test_season,total,correct,accuracy,bound,half_width,gap,within_bound") !=
          std::string::npos);
}

TEST_CASE("report writers") {
    std::vector<MatchInstance> test = {instance("2011-01-01", Label::win), instance("2011-01-02", Label::loss)};
    const auto report = evaluate_instances(EvalConfig{}, test, [](const MatchInstance&) { return 0.5; }, 7);
    std::ostringstream preds;
    write_predictions_csv(preds, report);
    CHECK(preds.str() ==
          "date,first,second,venue,p_win,predicted,actual,correct\n"
          "2011-01-01,a,b,home,0.5,win,win,1\n"
          "2011-01-02,a,b,home,0.5,win,loss,0\n");
    std::ostringstream curve;
    write_curve_csv(curve, report.curve);
    CHECK(curve.str() == "date,cumulative_accuracy,predictions\n2011-01-01,1,1\n2011-01-02,0.5,2\n");
    std::ostringstream summary;
    write_summary_csv(summary, report);
    CHECK(summary.str().find("model,naive_bayes_kde,adj_eff,0,7,2,1,0.5,1,1,0,0\n") != std::string::npos);
}
