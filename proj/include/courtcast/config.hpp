#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "courtcast/adjust.hpp"
#include "courtcast/eval.hpp"
#include "courtcast/features.hpp"
#include "courtcast/league.hpp"
#include "courtcast/models/model.hpp"

namespace courtcast {

/// Everything a run depends on. Missing optional values mean "derive from the data".
struct RunConfig {
    std::string data;
    std::string roster;  ///< empty: every team in the game log
    std::string out = "out";
    std::string model_file;  ///< empty: <out>/model.json

    FeatureScheme scheme = FeatureScheme::adj_eff;
    AdjustConfig adjust;
    ModelKind model = ModelKind::naive_bayes_kde;
    PredictorKind predictor = PredictorKind::model;
    Hyperparameters hyper;
    PythagParams pythag;
    std::string rank_method = "pythag";

    std::optional<Season> season;
    std::optional<Season> test_season;
    std::optional<Date> date;

    SyntheticLeagueSpec league;
    std::uint64_t seed = 1;
};

struct ConfigField {
    std::string key;
    std::string help;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

/// Every configurable key, in echo order.
const std::vector<ConfigField>& config_fields();

/// Built-in defaults. Data paths resolve against COURTCAST_DATA_DIR (or the
/// working directory when it is unset).
RunConfig default_config();

/// Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment except on echo lines
/// (`# courtcast.config key=value`), which are read as settings too. Input
/// that opens with echo lines is an artifact: reading stops at its first
/// non-echo line.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in, const std::string& source);
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

/// One `# courtcast.config key=value` line per field.
std::string config_echo(const RunConfig& config);
std::map<std::string, std::string> config_values(const RunConfig& config);

EvalConfig eval_config(const RunConfig& config, Season test_season);
SyntheticLeagueSpec league_spec(const RunConfig& config);

}  // namespace courtcast
