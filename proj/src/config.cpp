#include "courtcast/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace courtcast {

namespace {

constexpr std::string_view kEchoPrefix = "# courtcast.config ";

std::string text_of(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

template <typename Int>
Int parse_int_in(const std::string& text, long long lo, long long hi) {
    const long long v = parse_integer(text);
    if (v < lo || v > hi) throw std::invalid_argument("value " + text + " out of range");
    return static_cast<Int>(v);
}

std::optional<double> parse_optional_double(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_double(text);
}

std::optional<Season> parse_optional_season(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_int_in<Season>(text, 1000, 9999);
}

ConfigField field(std::string key, std::string help, std::function<std::string(const RunConfig&)> get,
                  std::function<void(RunConfig&, const std::string&)> set) {
    return {std::move(key), std::move(help), std::move(get), std::move(set)};
}

std::vector<ConfigField> make_fields() {
    std::vector<ConfigField> f;
    f.push_back(field("data", "game log CSV", [](const RunConfig& c) { return c.data; },
                      [](RunConfig& c, const std::string& v) { c.data = v; }));
    f.push_back(field("roster", "roster CSV (season,team); empty keeps every team",
                      [](const RunConfig& c) { return c.roster; },
                      [](RunConfig& c, const std::string& v) { c.roster = v; }));
    f.push_back(field("out", "output directory", [](const RunConfig& c) { return c.out; },
                      [](RunConfig& c, const std::string& v) { c.out = v; }));
    f.push_back(field("model_file", "model artifact path; empty means <out>/model.json",
                      [](const RunConfig& c) { return c.model_file; },
                      [](RunConfig& c, const std::string& v) { c.model_file = v; }));
    f.push_back(field("scheme", "feature scheme", [](const RunConfig& c) { return std::string(to_string(c.scheme)); },
                      [](RunConfig& c, const std::string& v) { c.scheme = parse_scheme(v); }));
    f.push_back(field("averaging", "alpha | explicit",
                      [](const RunConfig& c) { return std::string(to_string(c.adjust.scheme)); },
                      [](RunConfig& c, const std::string& v) { c.adjust.scheme = parse_averaging(v); }));
    f.push_back(field("alpha", "weight of the newest game under alpha averaging",
                      [](const RunConfig& c) { return format_double(c.adjust.alpha); },
                      [](RunConfig& c, const std::string& v) {
                          const double a = parse_double(v);
                          if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
                          c.adjust.alpha = a;
                      }));
    f.push_back(field("ft_factor", "free-throw factor of the possession estimate",
                      [](const RunConfig& c) { return format_double(c.adjust.ft_factor); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ft_factor must lie in (0, 1)");
                          c.adjust.ft_factor = x;
                      }));
    f.push_back(field("seeding", "prior_season | from_scratch",
                      [](const RunConfig& c) { return std::string(to_string(c.adjust.seeding)); },
                      [](RunConfig& c, const std::string& v) { c.adjust.seeding = parse_seeding(v); }));
    f.push_back(field("league_average", "raw | adjusted league means used as the national average",
                      [](const RunConfig& c) { return std::string(to_string(c.adjust.league_average)); },
                      [](RunConfig& c, const std::string& v) { c.adjust.league_average = parse_league_average(v); }));
    f.push_back(field("model", "naive_bayes_kde | mlp | decision_tree | random_forest",
                      [](const RunConfig& c) { return std::string(to_string(c.model)); },
                      [](RunConfig& c, const std::string& v) { c.model = parse_model_kind(v); }));
    f.push_back(field("predictor", "model | home | pythag (evaluate only)",
                      [](const RunConfig& c) { return std::string(to_string(c.predictor)); },
                      [](RunConfig& c, const std::string& v) { c.predictor = parse_predictor_kind(v); }));
    f.push_back(field("nb_bandwidth_floor", "smallest kernel bandwidth",
                      [](const RunConfig& c) { return format_double(c.hyper.nb_bandwidth_floor); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x > 0.0)) throw std::invalid_argument("bandwidth floor must be positive");
                          c.hyper.nb_bandwidth_floor = x;
                      }));
    f.push_back(field("nb_fixed_bandwidth", "kernel bandwidth for every feature; empty uses the data rule",
                      [](const RunConfig& c) { return text_of(c.hyper.nb_fixed_bandwidth); },
                      [](RunConfig& c, const std::string& v) {
                          auto x = parse_optional_double(v);
                          if (x && !(*x > 0.0)) throw std::invalid_argument("bandwidth must be positive");
                          c.hyper.nb_fixed_bandwidth = x;
                      }));
    f.push_back(field("mlp_hidden", "hidden units; 0 uses (attributes + 2) / 2 rounded up",
                      [](const RunConfig& c) { return std::to_string(c.hyper.mlp_hidden_units); },
                      [](RunConfig& c, const std::string& v) { c.hyper.mlp_hidden_units = parse_int_in<int>(v, 0, 4096); }));
    f.push_back(field("mlp_learning_rate", "backpropagation step size",
                      [](const RunConfig& c) { return format_double(c.hyper.mlp_learning_rate); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x > 0.0)) throw std::invalid_argument("learning rate must be positive");
                          c.hyper.mlp_learning_rate = x;
                      }));
    f.push_back(field("mlp_momentum", "momentum of the weight updates",
                      [](const RunConfig& c) { return format_double(c.hyper.mlp_momentum); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("momentum must lie in [0, 1)");
                          c.hyper.mlp_momentum = x;
                      }));
    f.push_back(field("mlp_epochs", "passes over the training rows", [](const RunConfig& c) { return std::to_string(c.hyper.mlp_epochs); },
                      [](RunConfig& c, const std::string& v) { c.hyper.mlp_epochs = parse_int_in<int>(v, 1, 1000000); }));
    f.push_back(field("tree_min_fraction", "smallest splittable node as a fraction of the training rows",
                      [](const RunConfig& c) { return format_double(c.hyper.tree_min_fraction); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("fraction must lie in [0, 1)");
                          c.hyper.tree_min_fraction = x;
                      }));
    f.push_back(field("forest_trees", "trees in the forest", [](const RunConfig& c) { return std::to_string(c.hyper.forest_trees); },
                      [](RunConfig& c, const std::string& v) { c.hyper.forest_trees = parse_int_in<int>(v, 1, 10000); }));
    f.push_back(field("forest_features", "attributes tried per split; 0 uses floor(sqrt(attributes))",
                      [](const RunConfig& c) { return std::to_string(c.hyper.forest_features_per_split); },
                      [](RunConfig& c, const std::string& v) {
                          c.hyper.forest_features_per_split = parse_int_in<int>(v, 0, 4096);
                      }));
    f.push_back(field("pythag_exponent", "exponent of the Pythagorean rating", [](const RunConfig& c) { return format_double(c.pythag.exponent); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x > 0.0)) throw std::invalid_argument("exponent must be positive");
                          c.pythag.exponent = x;
                      }));
    f.push_back(field("home_multiplier", "home-court scaling of AdjOE/AdjDE for Pythagorean picks; empty for none",
                      [](const RunConfig& c) { return text_of(c.pythag.home_multiplier); },
                      [](RunConfig& c, const std::string& v) {
                          auto x = parse_optional_double(v);
                          if (x && !(*x > 0.0)) throw std::invalid_argument("multiplier must be positive");
                          c.pythag.home_multiplier = x;
                      }));
    f.push_back(field("rank_method", "pythag | rpi | model", [](const RunConfig& c) { return c.rank_method; },
                      [](RunConfig& c, const std::string& v) {
                          if (v != "pythag" && v != "rpi" && v != "model") {
                              throw std::invalid_argument("unknown ranking method '" + v + "'");
                          }
                          c.rank_method = v;
                      }));
    f.push_back(field("season", "season for adjust/stats; empty means every season (stats) or the last (adjust)",
                      [](const RunConfig& c) { return c.season ? std::to_string(*c.season) : ""; },
                      [](RunConfig& c, const std::string& v) { c.season = parse_optional_season(v); }));
    f.push_back(field("test_season", "held-out season; empty means the last season in the log",
                      [](const RunConfig& c) { return c.test_season ? std::to_string(*c.test_season) : ""; },
                      [](RunConfig& c, const std::string& v) { c.test_season = parse_optional_season(v); }));
    f.push_back(field("date", "ranking date (YYYY-MM-DD); empty means after the last game",
                      [](const RunConfig& c) { return c.date ? c.date->to_string() : ""; },
                      [](RunConfig& c, const std::string& v) {
                          c.date = v.empty() ? std::nullopt : std::optional<Date>(Date::parse(v));
                      }));
    f.push_back(field("teams", "synthetic league size (even)",
                      [](const RunConfig& c) { return std::to_string(c.league.n_teams); },
                      [](RunConfig& c, const std::string& v) { c.league.n_teams = parse_int_in<int>(v, 2, 10000); }));
    f.push_back(field("games_per_team", "synthetic games per team per season",
                      [](const RunConfig& c) { return std::to_string(c.league.games_per_team); },
                      [](RunConfig& c, const std::string& v) {
                          c.league.games_per_team = parse_int_in<int>(v, 1, 10000);
                      }));
    f.push_back(field("seasons", "synthetic seasons", [](const RunConfig& c) { return std::to_string(c.league.seasons); },
                      [](RunConfig& c, const std::string& v) { c.league.seasons = parse_int_in<int>(v, 1, 100); }));
    f.push_back(field("first_season", "first synthetic season",
                      [](const RunConfig& c) { return std::to_string(c.league.first_season); },
                      [](RunConfig& c, const std::string& v) { c.league.first_season = parse_int_in<Season>(v, 1000, 9000); }));
    f.push_back(field("strength_spread", "sd of latent offense and defense (points per possession)",
                      [](const RunConfig& c) { return format_double(c.league.strength_spread); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (x < 0.0) throw std::invalid_argument("spread must be non-negative");
                          c.league.strength_spread = x;
                      }));
    f.push_back(field("carryover", "season-to-season correlation of latent strengths",
                      [](const RunConfig& c) { return format_double(c.league.season_carryover); },
                      [](RunConfig& c, const std::string& v) {
                          const double x = parse_double(v);
                          if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("carryover must lie in [0, 1]");
                          c.league.season_carryover = x;
                      }));
    f.push_back(field("noise", "per-game scoring-rate sd",
                      [](const RunConfig& c) { return format_double(c.league.noise); },
                      [](RunConfig& c, const std::string& v) { c.league.noise = parse_double(v); }));
    f.push_back(field("home_edge", "home scoring-rate edge",
                      [](const RunConfig& c) { return format_double(c.league.home_edge); },
                      [](RunConfig& c, const std::string& v) { c.league.home_edge = parse_double(v); }));
    f.push_back(field("neutral_fraction", "share of synthetic games at neutral sites",
                      [](const RunConfig& c) { return format_double(c.league.neutral_fraction); },
                      [](RunConfig& c, const std::string& v) { c.league.neutral_fraction = parse_double(v); }));
    f.push_back(field("pace", "mean possessions per game",
                      [](const RunConfig& c) { return format_double(c.league.pace); },
                      [](RunConfig& c, const std::string& v) { c.league.pace = parse_double(v); }));
    f.push_back(field("pace_sd", "sd of possessions per game", [](const RunConfig& c) { return format_double(c.league.pace_sd); },
                      [](RunConfig& c, const std::string& v) { c.league.pace_sd = parse_double(v); }));
    f.push_back(field("target_bayes", "solve the noise for this Bayes accuracy; empty keeps noise",
                      [](const RunConfig& c) { return text_of(c.league.target_bayes_accuracy); },
                      [](RunConfig& c, const std::string& v) { c.league.target_bayes_accuracy = parse_optional_double(v); }));
    f.push_back(field("target_home", "solve the home edge for this home win rate; empty keeps home_edge",
                      [](const RunConfig& c) { return text_of(c.league.target_home_win_rate); },
                      [](RunConfig& c, const std::string& v) { c.league.target_home_win_rate = parse_optional_double(v); }));
    f.push_back(field("seed", "seed for every random choice", [](const RunConfig& c) { return std::to_string(c.seed); },
                      [](RunConfig& c, const std::string& v) {
                          c.seed = static_cast<std::uint64_t>(parse_int_in<long long>(v, 0, 9007199254740992LL));
                      }));
    return f;
}

}  // namespace

const std::vector<ConfigField>& config_fields() {
    static const std::vector<ConfigField> fields = make_fields();
    return fields;
}

RunConfig default_config() {
    RunConfig config;
    std::filesystem::path root = ".";
    if (const char* env = std::getenv("COURTCAST_DATA_DIR"); env != nullptr && *env != '\0') root = env;
    config.data = (root / "games.csv").string();
    if (const auto roster = root / "roster.csv"; std::filesystem::exists(roster)) config.roster = roster.string();
    return config;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    std::string normalized = key;
    for (auto& ch : normalized) {
        if (ch == '-') ch = '_';
    }
    for (const auto& f : config_fields()) {
        if (f.key != normalized) continue;
        try {
            f.set(config, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(normalized + ": " + e.what());
        }
        return;
    }
    throw ConfigError("unknown setting '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    bool artifact = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.starts_with(kEchoPrefix)) {
            text = trim(std::string_view(text).substr(kEchoPrefix.size()));
            if (out.empty()) artifact = true;
        } else if (artifact) {
            break;
        } else if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = trim(std::string_view(text).substr(0, eq));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::move(key), trim(std::string_view(text).substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file " + path);
    return parse_config_text(in, path);
}

std::map<std::string, std::string> config_values(const RunConfig& config) {
    std::map<std::string, std::string> values;
    for (const auto& f : config_fields()) values[f.key] = f.get(config);
    return values;
}

std::string config_echo(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& f : config_fields()) out << kEchoPrefix << f.key << '=' << f.get(config) << '\n';
    return out.str();
}

EvalConfig eval_config(const RunConfig& config, Season test_season) {
    EvalConfig e;
    e.test_season = test_season;
    e.predictor = config.predictor;
    e.kind = config.model;
    e.scheme = config.scheme;
    e.adjust = config.adjust;
    e.hyper = config.hyper;
    e.pythag = config.pythag;
    e.seed = config.seed;
    return e;
}

SyntheticLeagueSpec league_spec(const RunConfig& config) {
    SyntheticLeagueSpec spec = config.league;
    spec.seed = config.seed;
    return spec;
}

}  // namespace courtcast
