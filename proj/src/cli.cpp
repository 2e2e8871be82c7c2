#include "courtcast/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "courtcast/baselines.hpp"
#include "courtcast/config.hpp"
#include "courtcast/eval.hpp"
#include "courtcast/ingest.hpp"
#include "courtcast/stats.hpp"
#include "json.hpp"

namespace courtcast::cli {

namespace {

namespace fs = std::filesystem;

std::string flag_name(const std::string& key) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    return flag;
}

class Runner {
public:
    Runner(RunConfig config, std::ostream& log) : config_(std::move(config)), log_(log) {}

    void ingest() {
        const SeasonStore store = load_store();
        write_artifact("games.csv", [&](std::ostream& out) { write_game_log(store, out); });
        write_artifact("roster.csv", [&](std::ostream& out) { write_roster(store, out); });
        for (Season s : store.seasons()) {
            log_ << "season " << s << ": " << store.games(s).size() << " games, " << store.roster(s).size()
                 << " teams\n";
        }
    }

    void stats() {
        const SeasonStore store = load_store();
        std::vector<Season> seasons = store.seasons();
        if (config_.season) seasons = {require_season(store, *config_.season)};
        write_artifact("stats.csv", [&](std::ostream& out) {
            out << "date,season,team,opponent,venue,possessions,oe,de,efg,to_pct,or_pct,ftr\n";
            for (Season s : seasons) {
                for (const auto& g : store.games(s)) {
                    const Venue venue_a = venue_of_first(g.location);
                    write_stats_row(out, g, g.team_a, g.team_b, venue_a, game_stats(g.box_a, g.box_b, ft_factor()));
                    write_stats_row(out, g, g.team_b, g.team_a, mirrored(venue_a),
                                    game_stats(g.box_b, g.box_a, ft_factor()));
                }
            }
        });
    }

    void adjust() {
        const SeasonStore store = load_store();
        const Season season = config_.season ? require_season(store, *config_.season) : store.seasons().back();
        const SeasonSnapshots snaps = run_season(store, season, config_.adjust);
        write_artifact("snapshots_" + std::to_string(season) + ".csv", [&](std::ostream& out) {
            out << "team,date,games_played,adj_oe,adj_de";
            for (auto f : kFactorNames) out << ",adj_off_" << f;
            for (auto f : kFactorNames) out << ",adj_def_" << f;
            out << '\n';
            for (const auto& [team, final_snap] : snaps.final) {
                if (const auto it = snaps.pre_match.find(team); it != snaps.pre_match.end()) {
                    for (const auto& s : it->second) write_snapshot_row(out, s);
                }
                write_snapshot_row(out, final_snap);
            }
        });
    }

    void features() {
        const SeasonStore store = load_store();
        const Season test = test_season(store);
        const SnapshotSeries series = run_seasons(store, config_.adjust, test);
        const Dataset data = build_dataset(store, series, config_.scheme, test);
        write_artifact("train_" + std::to_string(test) + ".csv",
                       [&](std::ostream& out) { write_instances(out, data.train); });
        write_artifact("test_" + std::to_string(test) + ".csv",
                       [&](std::ostream& out) { write_instances(out, data.test); });
    }

    void train_model() {
        const SeasonStore store = load_store();
        const Season test = test_season(store);
        const SnapshotSeries series = run_seasons(store, config_.adjust, test);
        const Dataset data = build_dataset(store, series, config_.scheme, test);
        const TrainedModel model = courtcast::train(data.train, config_.model, config_.hyper, config_.seed);
        nlohmann::json j = nlohmann::json::parse(model.to_text());
        j["run_config"] = config_values(config_);
        const fs::path path = model_path();
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path);
        if (!out) throw DataError("cannot write " + path.string());
        out << j.dump(1) << '\n';
        log_ << "wrote " << path.string() << " (" << data.train.size() << " training instances)\n";
    }

    void predict() {
        const TrainedModel model = TrainedModel::load(model_path());
        const SeasonStore store = load_store();
        const Season test = test_season(store);
        const SnapshotSeries series = run_seasons(store, config_.adjust, test);
        const auto instances = encode_games(store.games(test), series, model.scheme());
        EvalConfig e = eval_config(config_, test);
        e.kind = model.kind();
        e.scheme = model.scheme();
        const EvalReport report = evaluate_instances(
            e, instances, [&](const MatchInstance& inst) { return model.predict(inst).p_win; }, model.train_rows());
        write_artifact("predictions.csv", [&](std::ostream& out) { write_predictions_csv(out, report); });
        log_ << "accuracy " << format_double(report.accuracy) << " over " << report.confusion.total() << " games\n";
    }

    void rank() {
        const SeasonStore store = load_store();
        Season season = store.seasons().back();
        if (config_.season) {
            season = require_season(store, *config_.season);
        } else if (config_.date) {
            for (Season s : store.seasons()) {
                if (!store.games(s).empty() && store.games(s).front().date <= *config_.date) season = s;
            }
        }
        const auto& games = store.games(season);
        const Date date = config_.date ? *config_.date : games.back().date.plus_days(1);
        std::vector<GameRecord> before;
        for (const auto& g : games) {
            if (g.date < date) before.push_back(g);
        }

        Ranking ranking;
        if (config_.rank_method == "rpi") {
            if (before.empty()) throw DataError("no games before " + date.to_string() + " in season " +
                                                std::to_string(season));
            std::map<TeamId, double> scores;
            for (const auto& [team, c] : rpi_table(before)) scores[team] = c.rating;
            ranking = rank_by_score(scores);
        } else {
            const SeasonSnapshots snaps = run_season(store, season, config_.adjust);
            std::vector<TeamSnapshot> teams;
            for (const auto& [team, unused] : snaps.final) teams.push_back(snaps.as_of(team, date));
            if (config_.rank_method == "model") {
                const TrainedModel model = TrainedModel::load(model_path());
                ranking = round_robin_rank(model_pair_predictor(model), teams);
            } else {
                ranking = round_robin_rank(pythag_pair_predictor(config_.pythag), teams);
            }
        }
        write_artifact("ranking.csv", [&](std::ostream& out) {
            out << "rank,team,score\n";
            for (std::size_t i = 0; i < ranking.size(); ++i) {
                out << i + 1 << ',' << ranking[i].team << ',' << format_double(ranking[i].score) << '\n';
            }
        });
    }

    void evaluate() {
        const SeasonStore store = load_store();
        const EvalReport report = walk_forward_evaluate(store, eval_config(config_, test_season(store)));
        write_artifact("summary.csv", [&](std::ostream& out) { write_summary_csv(out, report); });
        write_artifact("predictions.csv", [&](std::ostream& out) { write_predictions_csv(out, report); });
        write_artifact("curve.csv", [&](std::ostream& out) { write_curve_csv(out, report.curve); });
        log_ << "accuracy " << format_double(report.accuracy) << " over " << report.confusion.total() << " games\n";
    }

    void simulate() {
        const SyntheticLeague league = generate_league(league_spec(config_));
        write_artifact("games.csv", [&](std::ostream& out) { write_game_log(league.store, out); });
        write_artifact("roster.csv", [&](std::ostream& out) { write_roster(league.store, out); });
        write_artifact("truth.csv", [&](std::ostream& out) {
            out << "season,team,offense,defense\n";
            for (const auto& [season, teams] : league.truth.strengths) {
                for (const auto& [team, s] : teams) {
                    out << season << ',' << team << ',' << format_double(s.offense) << ','
                        << format_double(s.defense) << '\n';
                }
            }
        });
        write_artifact("league.csv", [&](std::ostream& out) {
            out << "season,bayes_accuracy\n";
            for (const auto& [season, acc] : league.truth.bayes_accuracy_by_season) {
                out << season << ',' << format_double(acc) << '\n';
            }
            out << "all," << format_double(league.truth.bayes_accuracy) << '\n';
        });
        log_ << "noise " << format_double(league.truth.noise) << ", home edge "
             << format_double(league.truth.home_edge) << ", Bayes accuracy "
             << format_double(league.truth.bayes_accuracy) << ", expected home win rate "
             << format_double(league.truth.expected_home_win_rate) << '\n';
    }

    void glass_ceiling() {
        if (!config_.league.target_bayes_accuracy) config_.league.target_bayes_accuracy = 0.75;
        const auto report =
            glass_ceiling_experiment(league_spec(config_), eval_config(config_, 0),
                                     {kAllModelKinds.begin(), kAllModelKinds.end()},
                                     {kAllSchemes.begin(), kAllSchemes.end()});
        write_artifact("glass_ceiling.csv", [&](std::ostream& out) { write_ceiling_csv(out, report); });
        std::size_t within = 0;
        for (const auto& c : report.cells) within += c.within_bound() ? 1 : 0;
        log_ << within << " of " << report.cells.size() << " cells within the Bayes bound "
             << format_double(report.truth.bayes_accuracy) << '\n';
    }

private:
    double ft_factor() const { return config_.adjust.ft_factor; }

    SeasonStore load_store() const {
        std::optional<Roster> roster;
        if (!config_.roster.empty()) roster = parse_roster(config_.roster);
        SeasonStore store = parse_game_log(config_.data, roster);
        if (store.total_games() == 0) throw DataError("game log " + config_.data + " holds no games");
        return store;
    }

    static Season require_season(const SeasonStore& store, Season season) {
        if (!store.has_season(season)) throw DataError("season " + std::to_string(season) + " not in the game log");
        return season;
    }

    Season test_season(const SeasonStore& store) const {
        return config_.test_season ? require_season(store, *config_.test_season) : store.seasons().back();
    }

    fs::path model_path() const {
        return config_.model_file.empty() ? fs::path(config_.out) / "model.json" : fs::path(config_.model_file);
    }

    void write_artifact(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const fs::path dir = config_.out;
        fs::create_directories(dir);
        const fs::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write " + path.string());
        out << config_echo(config_);
        body(out);
        if (!out) throw DataError("write failed: " + path.string());
        log_ << "wrote " << path.string() << '\n';
    }

    static void write_stats_row(std::ostream& out, const GameRecord& g, const TeamId& team, const TeamId& opp,
                                Venue venue, const GameStats& s) {
        out << g.date.to_string() << ',' << g.season << ',' << team << ',' << opp << ',' << to_string(venue) << ','
            << format_double(s.possessions) << ',' << format_double(s.oe) << ',' << format_double(s.de) << ','
            << format_double(s.efg) << ',' << format_double(s.to_pct) << ',' << format_double(s.or_pct) << ','
            << format_double(s.ftr) << '\n';
    }

    static void write_snapshot_row(std::ostream& out, const TeamSnapshot& s) {
        out << s.team << ',' << s.date.to_string() << ',' << s.games_played << ',' << format_double(s.adj_oe) << ','
            << format_double(s.adj_de);
        for (double v : s.adj_off) out << ',' << format_double(v);
        for (double v : s.adj_def) out << ',' << format_double(v);
        out << '\n';
    }

    void write_instances(std::ostream& out, const std::vector<MatchInstance>& instances) const {
        out << "venue";
        for (const auto& name : feature_names(config_.scheme)) out << ',' << name;
        out << ",label\n";
        for (const auto& inst : instances) {
            out << to_string(inst.location);
            for (double v : inst.features) out << ',' << format_double(v);
            out << ',' << to_string(inst.label) << '\n';
        }
    }

    RunConfig config_;
    std::ostream& log_;
};

struct Command {
    std::string name;
    std::string description;
    void (Runner::*action)();
};

const std::vector<Command>& commands() {
    static const std::vector<Command> list = {
        {"ingest", "validate a game log and write it back in canonical order", &Runner::ingest},
        {"stats", "per-game possessions, efficiencies and Four Factors", &Runner::stats},
        {"adjust", "day-by-day adjusted team snapshots for one season", &Runner::adjust},
        {"features", "training and test instances for a held-out season", &Runner::features},
        {"train", "train a classifier on every season before the test season", &Runner::train_model},
        {"predict", "predict a season's games with a saved model", &Runner::predict},
        {"rank", "rank teams by Pythagorean rating, RPI or a saved model", &Runner::rank},
        {"evaluate", "walk-forward evaluation on a held-out season", &Runner::evaluate},
        {"simulate", "generate a synthetic league with known strengths", &Runner::simulate},
        {"glass-ceiling", "every model and scheme on a league with a known accuracy bound", &Runner::glass_ceiling},
    };
    return list;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"courtcast: basketball match-outcome prediction", "courtcast"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    std::map<std::string, std::string> values;
    std::string config_path;
    std::map<CLI::App*, std::map<std::string, CLI::Option*>> options;
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& command : commands()) {
        CLI::App* sub = app.add_subcommand(command.name, command.description);
        by_app[sub] = &command;
        sub->add_option("--config", config_path, "flat key = value settings file");
        for (const auto& f : config_fields()) {
            std::string names = flag_name(f.key);
            // adjust has no use for the feature scheme; there --scheme names the averaging scheme
            if (command.name == "adjust" && f.key == "scheme") names = "--feature-scheme";
            if (command.name == "adjust" && f.key == "averaging") names += ",--scheme";
            if (command.name == "rank" && f.key == "rank_method") names += ",--method";
            options[sub][f.key] = sub->add_option(names, values[f.key], f.help);
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        RunConfig config = default_config();
        if (!config_path.empty()) {
            for (const auto& [key, value] : parse_config_file(config_path)) apply_setting(config, key, value);
        }
        for (const auto& f : config_fields()) {
            if (options[chosen][f.key]->count() > 0) apply_setting(config, f.key, values[f.key]);
        }
        Runner runner(std::move(config), out);
        (runner.*(by_app.at(chosen)->action))();
        return ok;
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const fs::filesystem_error& e) {
        err << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const std::domain_error& e) {
        err << "data error: " << e.what() << '\n';
        return data_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace courtcast::cli
