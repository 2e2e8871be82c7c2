#include "courtcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

namespace courtcast {

std::string_view to_string(PredictorKind kind) {
    switch (kind) {
    case PredictorKind::model: return "model";
    case PredictorKind::home: return "home";
    case PredictorKind::pythag: return "pythag";
    }
    return "model";
}

PredictorKind parse_predictor_kind(std::string_view text) {
    for (auto kind : {PredictorKind::model, PredictorKind::home, PredictorKind::pythag}) {
        if (to_string(kind) == text) return kind;
    }
    throw ConfigError("unknown predictor '" + std::string(text) + "' (expected model, home or pythag)");
}

std::vector<CurvePoint> accuracy_curve(const std::vector<PredictionRecord>& predictions) {
    if (predictions.empty()) throw DataError("accuracy curve of an empty report");
    std::vector<PredictionRecord> sorted = predictions;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.date < b.date; });
    std::vector<CurvePoint> curve;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        correct += sorted[i].correct() ? 1 : 0;
        if (i + 1 < sorted.size() && sorted[i + 1].date == sorted[i].date) continue;
        const std::size_t n = i + 1;
        curve.push_back({sorted[i].date, n, static_cast<double>(correct) / static_cast<double>(n)});
    }
    return curve;
}

std::vector<CurvePoint> accuracy_curve(const EvalReport& report) { return accuracy_curve(report.predictions); }

EvalReport summarize(const EvalConfig& config, std::vector<PredictionRecord> predictions, std::size_t train_rows) {
    if (predictions.empty()) throw DataError("no test predictions to evaluate");
    EvalReport report;
    report.config = config;
    report.train_rows = train_rows;
    for (const auto& p : predictions) {
        const bool predicted_win = p.predicted == Label::win;
        if (p.correct()) {
            ++(predicted_win ? report.confusion.true_win : report.confusion.true_loss);
        } else {
            ++(predicted_win ? report.confusion.false_win : report.confusion.false_loss);
        }
    }
    report.accuracy =
        static_cast<double>(report.confusion.correct()) / static_cast<double>(report.confusion.total());
    report.curve = accuracy_curve(predictions);
    report.predictions = std::move(predictions);
    return report;
}

EvalReport evaluate_instances(const EvalConfig& config, const std::vector<MatchInstance>& test,
                              const InstancePredictor& predictor, std::size_t train_rows) {
    std::vector<PredictionRecord> records;
    records.reserve(test.size());
    for (const auto& inst : test) {
        const double p = std::clamp(predictor(inst), 0.0, 1.0);
        records.push_back({inst.date, inst.first, inst.second, inst.location, p, decide(p, inst.location), inst.label});
    }
    return summarize(config, std::move(records), train_rows);
}

EvalReport walk_forward_evaluate(const SeasonStore& store, const SnapshotSeries& snapshots, const EvalConfig& config) {
    switch (config.predictor) {
    case PredictorKind::model: {
        const Dataset data = build_dataset(store, snapshots, config.scheme, config.test_season);
        const TrainedModel model = train(data.train, config.kind, config.hyper, config.seed);
        return evaluate_instances(
            config, data.test, [&](const MatchInstance& inst) { return model.predict(inst).p_win; },
            data.train.size());
    }
    case PredictorKind::home: {
        if (!store.has_season(config.test_season)) {
            throw DataError("test season " + std::to_string(config.test_season) + " not in store");
        }
        const auto test = encode_games(store.games(config.test_season), snapshots, config.scheme);
        return evaluate_instances(config, test, [](const MatchInstance& inst) {
            return inst.location == Venue::home ? 1.0 : (inst.location == Venue::away ? 0.0 : 0.5);
        });
    }
    case PredictorKind::pythag: {
        if (!store.has_season(config.test_season)) {
            throw DataError("test season " + std::to_string(config.test_season) + " not in store");
        }
        const auto& season = snapshots.at(config.test_season);
        const auto test = encode_games(store.games(config.test_season), snapshots, config.scheme);
        return evaluate_instances(config, test, [&](const MatchInstance& inst) {
            const auto pick = predict_match_pythag(season.at(inst.first, inst.date), season.at(inst.second, inst.date),
                                                   inst.location, config.pythag);
            return 0.5 + 0.5 * pick.margin;
        });
    }
    }
    throw InvariantError("unhandled predictor kind");
}

EvalReport walk_forward_evaluate(const SeasonStore& store, const EvalConfig& config) {
    if (!store.has_season(config.test_season)) {
        throw DataError("test season " + std::to_string(config.test_season) + " not in store");
    }
    const SnapshotSeries snapshots = run_seasons(store, config.adjust, config.test_season);
    return walk_forward_evaluate(store, snapshots, config);
}

std::vector<GridCell> evaluate_grid(const SeasonStore& store, const EvalConfig& base,
                                    const std::vector<ModelKind>& kinds, const std::vector<FeatureScheme>& schemes,
                                    const std::vector<Season>& test_seasons) {
    if (test_seasons.empty()) throw ConfigError("no test seasons given");
    Season last = test_seasons.front();
    for (Season s : test_seasons) {
        if (!store.has_season(s)) throw DataError("test season " + std::to_string(s) + " not in store");
        last = std::max(last, s);
    }
    const SnapshotSeries snapshots = run_seasons(store, base.adjust, last);

    std::vector<GridCell> cells;
    for (Season s : test_seasons) {
        for (auto kind : kinds) {
            for (auto scheme : schemes) cells.push_back({kind, scheme, s});
        }
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(cells.size());
    for (auto& cell : cells) {
        jobs.push_back(std::async(std::launch::async, [&store, &snapshots, &base, &cell] {
            EvalConfig config = base;
            config.predictor = PredictorKind::model;
            config.kind = cell.kind;
            config.scheme = cell.scheme;
            config.test_season = cell.test_season;
            const EvalReport report = walk_forward_evaluate(store, snapshots, config);
            cell.correct = report.confusion.correct();
            cell.total = report.confusion.total();
            cell.accuracy = report.accuracy;
        }));
    }
    for (auto& job : jobs) job.get();
    return cells;
}

double binomial_half_width(double p, std::size_t n, double z) {
    if (n == 0) throw std::domain_error("binomial interval of an empty sample");
    return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

GlassCeilingReport glass_ceiling_experiment(const SyntheticLeagueSpec& spec, const EvalConfig& base,
                                            const std::vector<ModelKind>& kinds,
                                            const std::vector<FeatureScheme>& schemes) {
    if (spec.seasons < 2) throw ConfigError("the glass-ceiling league needs at least two seasons");
    const SyntheticLeague league = generate_league(spec);
    GlassCeilingReport report;
    report.spec = spec;
    report.truth = league.truth;
    report.test_season = league.store.seasons().back();
    const double bound = league.truth.bayes_accuracy;
    for (const auto& cell : evaluate_grid(league.store, base, kinds, schemes, {report.test_season})) {
        report.cells.push_back({cell, bound, binomial_half_width(bound, cell.total)});
    }
    return report;
}

void write_predictions_csv(std::ostream& out, const EvalReport& report) {
    out << "date,first,second,venue,p_win,predicted,actual,correct\n";
    for (const auto& p : report.predictions) {
        out << p.date.to_string() << ',' << p.first << ',' << p.second << ',' << to_string(p.venue) << ','
            << format_double(p.p_win) << ',' << to_string(p.predicted) << ',' << to_string(p.actual) << ','
            << (p.correct() ? 1 : 0) << '\n';
    }
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "date,cumulative_accuracy,predictions\n";
    for (const auto& point : curve) {
        out << point.date.to_string() << ',' << format_double(point.accuracy) << ',' << point.predictions << '\n';
    }
}

void write_summary_csv(std::ostream& out, const EvalReport& report) {
    const auto& c = report.config;
    out << "predictor,kind,scheme,test_season,train_rows,total,correct,accuracy,true_win,false_win,true_loss,"
           "false_loss\n";
    out << to_string(c.predictor) << ',' << (c.predictor == PredictorKind::model ? to_string(c.kind) : "-") << ','
        << to_string(c.scheme) << ',' << c.test_season << ',' << report.train_rows << ','
        << report.confusion.total() << ',' << report.confusion.correct() << ',' << format_double(report.accuracy)
        << ',' << report.confusion.true_win << ',' << report.confusion.false_win << ',' << report.confusion.true_loss
        << ',' << report.confusion.false_loss << '\n';
}

void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells) {
    out << "kind,scheme,test_season,total,correct,accuracy\n";
    for (const auto& cell : cells) {
        out << to_string(cell.kind) << ',' << to_string(cell.scheme) << ',' << cell.test_season << ',' << cell.total
            << ',' << cell.correct << ',' << format_double(cell.accuracy) << '\n';
    }
}

void write_ceiling_csv(std::ostream& out, const GlassCeilingReport& report) {
    out << "# league bayes_accuracy=" << format_double(report.truth.bayes_accuracy)
        << " noise=" << format_double(report.truth.noise) << " home_edge=" << format_double(report.truth.home_edge)
        << " draws=" << report.truth.monte_carlo_draws << '\n';
    out << "kind,scheme,test_season,total,correct,accuracy,bound,half_width,gap,within_bound\n";
    for (const auto& c : report.cells) {
        out << to_string(c.cell.kind) << ',' << to_string(c.cell.scheme) << ',' << c.cell.test_season << ','
            << c.cell.total << ',' << c.cell.correct << ',' << format_double(c.cell.accuracy) << ','
            << format_double(c.bound) << ',' << format_double(c.half_width) << ',' << format_double(c.gap()) << ','
            << (c.within_bound() ? 1 : 0) << '\n';
    }
}

}  // namespace courtcast
