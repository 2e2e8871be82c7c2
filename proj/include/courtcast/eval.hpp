#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "courtcast/adjust.hpp"
#include "courtcast/baselines.hpp"
#include "courtcast/features.hpp"
#include "courtcast/league.hpp"
#include "courtcast/models/model.hpp"

namespace courtcast {

/// What produces the test-season picks.
enum class PredictorKind { model, home, pythag };

std::string_view to_string(PredictorKind kind);
PredictorKind parse_predictor_kind(std::string_view text);

struct PredictionRecord {
    Date date;
    TeamId first;
    TeamId second;
    Venue venue = Venue::neutral;  ///< first team's
    double p_win = 0.5;
    Label predicted = Label::win;
    Label actual = Label::win;

    bool correct() const { return predicted == actual; }
    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Counts from the first team's perspective, "positive" meaning a win.
struct Confusion {
    std::size_t true_win = 0;
    std::size_t false_win = 0;
    std::size_t true_loss = 0;
    std::size_t false_loss = 0;

    std::size_t total() const { return true_win + false_win + true_loss + false_loss; }
    std::size_t correct() const { return true_win + true_loss; }
    friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct CurvePoint {
    Date date;
    std::size_t predictions = 0;  ///< cumulative through `date`
    double accuracy = 0.0;
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct EvalConfig {
    Season test_season = 0;
    PredictorKind predictor = PredictorKind::model;
    ModelKind kind = ModelKind::naive_bayes_kde;
    FeatureScheme scheme = FeatureScheme::adj_eff;
    AdjustConfig adjust;
    Hyperparameters hyper;
    PythagParams pythag;
    std::uint64_t seed = 1;
};

struct EvalReport {
    EvalConfig config;
    std::size_t train_rows = 0;
    std::vector<PredictionRecord> predictions;  ///< chronological
    Confusion confusion;
    double accuracy = 0.0;
    std::vector<CurvePoint> curve;
};

/// Builds a report from already-made predictions; accuracy is correct/total.
/// Throws DataError when `predictions` is empty.
EvalReport summarize(const EvalConfig& config, std::vector<PredictionRecord> predictions, std::size_t train_rows);

/// Point at d = accuracy over every prediction dated on or before d.
std::vector<CurvePoint> accuracy_curve(const std::vector<PredictionRecord>& predictions);
std::vector<CurvePoint> accuracy_curve(const EvalReport& report);

using InstancePredictor = std::function<double(const MatchInstance&)>;

/// Every instance is scored by `predictor` (returning the first team's win
/// probability) and decided with the usual tie rule.
EvalReport evaluate_instances(const EvalConfig& config, const std::vector<MatchInstance>& test,
                              const InstancePredictor& predictor, std::size_t train_rows = 0);

/// Trains on every season before the test season and predicts each test game
/// from the teams' pre-match snapshots.
EvalReport walk_forward_evaluate(const SeasonStore& store, const EvalConfig& config);
/// Reuses snapshots already computed with `config.adjust`.
EvalReport walk_forward_evaluate(const SeasonStore& store, const SnapshotSeries& snapshots, const EvalConfig& config);

struct GridCell {
    ModelKind kind = ModelKind::naive_bayes_kde;
    FeatureScheme scheme = FeatureScheme::adj_eff;
    Season test_season = 0;
    std::size_t correct = 0;
    std::size_t total = 0;
    double accuracy = 0.0;
};

/// Walk-forward accuracy for every (kind, scheme, test season); cells run in parallel.
std::vector<GridCell> evaluate_grid(const SeasonStore& store, const EvalConfig& base,
                                    const std::vector<ModelKind>& kinds, const std::vector<FeatureScheme>& schemes,
                                    const std::vector<Season>& test_seasons);

/// Half-width of the normal-approximation binomial interval.
double binomial_half_width(double p, std::size_t n, double z = 2.5758293035489004);

struct CeilingCell {
    GridCell cell;
    double bound = 0.0;
    double half_width = 0.0;  ///< 99% interval at the cell's test-set size
    double gap() const { return cell.accuracy - bound; }
    bool within_bound() const { return cell.accuracy <= bound + half_width; }
};

struct GlassCeilingReport {
    SyntheticLeagueSpec spec;
    LeagueTruth truth;
    Season test_season = 0;
    std::vector<CeilingCell> cells;
};

/// Generates the league, tests on its last season, and compares every cell
/// with the generator's recorded Bayes accuracy.
GlassCeilingReport glass_ceiling_experiment(const SyntheticLeagueSpec& spec, const EvalConfig& base,
                                            const std::vector<ModelKind>& kinds,
                                            const std::vector<FeatureScheme>& schemes);

void write_predictions_csv(std::ostream& out, const EvalReport& report);
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
void write_summary_csv(std::ostream& out, const EvalReport& report);
void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells);
void write_ceiling_csv(std::ostream& out, const GlassCeilingReport& report);

}  // namespace courtcast
