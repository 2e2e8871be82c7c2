#include "courtcast/stats.hpp"

#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace courtcast;
using doctest::Approx;

namespace {

BoxScore poss_box(int fga, int or_, int to, int fta) {
    BoxScore b;
    b.fga = fga;
    b.or_ = or_;
    b.to = to;
    b.fta = fta;
    return b;
}

}  // namespace

TEST_CASE("possession estimate") {
    CHECK(possessions(poss_box(60, 10, 12, 20)) == Approx(0.96 * 47.5).epsilon(1e-12));
    CHECK(possessions(poss_box(60, 10, 12, 20), kNbaFtFactor) == Approx(0.96 * 46.0).epsilon(1e-12));
    CHECK(std::abs(possessions(poss_box(60, 10, 12, 20)) - 45.6) < 1e-9);
    CHECK(std::abs(possessions(poss_box(60, 10, 12, 20), 0.4) - 44.16) < 1e-9);
    CHECK_THROWS_AS(possessions(BoxScore{}), std::domain_error);
    CHECK_THROWS_AS(possessions(poss_box(60, 10, 12, 20), 1.0), std::domain_error);
    CHECK_THROWS_AS(possessions(poss_box(60, 10, 12, 20), 0.0), std::domain_error);
}

TEST_CASE("possessions move with the right counts") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(5, 30);
    for (int i = 0; i < 200; ++i) {
        const BoxScore b = poss_box(d(rng) + 65, d(rng), d(rng), d(rng));
        const double p = possessions(b);
        CHECK(possessions(poss_box(b.fga + 1, b.or_, b.to, b.fta)) >= p);
        CHECK(possessions(poss_box(b.fga, b.or_, b.to, b.fta + 1)) >= p);
        CHECK(possessions(poss_box(b.fga, b.or_ + 1, b.to, b.fta)) <= p);
        CHECK(possessions(poss_box(b.fga, b.or_, b.to + 1, b.fta)) <= p);
    }
}

TEST_CASE("efficiencies are per 100 of the team's own possessions") {
    // 0.96 * (60 - 5 - 5) = 48 possessions
    BoxScore own = fixtures::box(24, 60, 4, 8, 10, 5, 20, 5);
    own.fta = 0;
    own.ft = 0;
    own.fgm3 = 12;
    own.points = own.computed_points();  // 60
    BoxScore opp = fixtures::scoring_box(48);
    const auto e = raw_efficiencies(own, opp);
    CHECK(possessions(own) == Approx(48.0).epsilon(1e-12));
    CHECK(e.oe == Approx(125.0).epsilon(1e-12));
    CHECK(e.de == Approx(100.0).epsilon(1e-12));

    own.fgm = 0;
    own.fgm3 = 0;
    own.points = 0;
    CHECK(raw_efficiencies(own, opp).oe == 0.0);
}

TEST_CASE("efficiency round trip recovers points") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> pts(45, 110);
    for (int i = 0; i < 100; ++i) {
        const BoxScore a = fixtures::scoring_box(pts(rng));
        const BoxScore b = fixtures::scoring_box(pts(rng));
        const auto e = raw_efficiencies(a, b);
        CHECK(std::abs(e.oe * possessions(a) / 100.0 - a.points) < 1e-9);
        CHECK(std::abs(e.de * possessions(a) / 100.0 - b.points) < 1e-9);
    }
}

TEST_CASE("four factors") {
    BoxScore own;
    own.fgm = 25;
    own.fgm3 = 8;
    own.fga = 55;
    own.to = 12;
    own.or_ = 10;
    own.fta = 20;
    BoxScore opp;
    opp.dr = 20;
    const auto ff = four_factors(own, opp, 45.6);
    CHECK(std::abs(ff.efg - 29.0 / 55.0) < 1e-9);
    CHECK(std::abs(ff.efg - 0.527272727272) < 1e-9);
    CHECK(std::abs(ff.to_pct - 0.263157894736) < 1e-9);
    CHECK(std::abs(ff.or_pct - 1.0 / 3.0) < 1e-9);
    own.fga = 60;
    CHECK(std::abs(four_factors(own, opp, 45.6).ftr - 1.0 / 3.0) < 1e-9);

    SUBCASE("zero denominators name the factor") {
        BoxScore none = own;
        none.fga = 0;
        CHECK_THROWS_WITH_AS(four_factors(none, opp, 45.6), doctest::Contains("eFG"), std::domain_error);
        CHECK_THROWS_WITH_AS(four_factors(own, opp, 0.0), doctest::Contains("TO%"), std::domain_error);
        BoxScore no_boards = own;
        no_boards.or_ = 0;
        CHECK_THROWS_WITH_AS(four_factors(no_boards, BoxScore{}, 45.6), doctest::Contains("OR%"),
                             std::domain_error);
    }
}

TEST_CASE("factor ranges on random boxes") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pts(40, 120);
    for (int i = 0; i < 200; ++i) {
        const auto s = game_stats(fixtures::scoring_box(pts(rng)), fixtures::scoring_box(pts(rng)));
        CHECK(s.efg >= 0.0);
        CHECK(s.efg <= 1.5);
        CHECK(s.to_pct >= 0.0);
        CHECK(s.or_pct >= 0.0);
        CHECK(s.or_pct <= 1.0);
        CHECK(s.possessions > 0.0);
    }
    BoxScore all_threes = fixtures::box(10, 10, 10, 0, 0, 0, 0, 0);
    CHECK(four_factors(all_threes, fixtures::box(10, 20, 0, 0, 0, 0, 5, 0), 20.0).efg == 1.5);
}

TEST_CASE("factor weights") {
    CHECK(FourFactorWeights::sum() == 1.0);
    CHECK(FourFactorWeights::efg == 0.4);
    CHECK(FourFactorWeights::to == 0.25);
    CHECK(FourFactorWeights::or_ == 0.2);
    CHECK(FourFactorWeights::ftr == 0.15);
}
