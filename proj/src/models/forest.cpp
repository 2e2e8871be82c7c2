#include "courtcast/models/forest.hpp"

#include <cmath>
#include <future>
#include <random>

#include "json.hpp"

namespace courtcast {

RandomForest RandomForest::fit(const TrainingSet& data, const Hyperparameters& hyper, std::uint64_t seed) {
    if (hyper.forest_trees <= 0) throw ConfigError("forest_trees must be positive");
    const std::size_t attributes = data.dims + 1;
    TreeOptions options;
    options.criterion = SplitCriterion::info_gain;
    options.min_rows = 1;
    options.features_per_split =
        hyper.forest_features_per_split > 0
            ? static_cast<std::size_t>(hyper.forest_features_per_split)
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(attributes))));

    // each tree owns its RNG stream, so the result does not depend on scheduling
    auto grow = [&](std::size_t t) {
        std::mt19937_64 rng(mix_seed(seed, 100 + t));
        std::uniform_int_distribution<std::size_t> pick(0, data.rows() - 1);
        std::vector<std::size_t> sample(data.rows());
        for (auto& r : sample) r = pick(rng);
        return DecisionTree::fit(data, std::move(sample), options, &rng);
    };

    std::vector<std::future<DecisionTree>> pending;
    for (std::size_t t = 0; t < static_cast<std::size_t>(hyper.forest_trees); ++t) {
        pending.push_back(std::async(std::launch::async, grow, t));
    }
    RandomForest forest;
    for (auto& f : pending) forest.trees_.push_back(f.get());
    return forest;
}

std::vector<Label> RandomForest::votes(Venue venue, std::span<const double> features) const {
    std::vector<Label> out;
    out.reserve(trees_.size());
    for (const auto& tree : trees_) out.push_back(decide(tree.p_win(venue, features), venue));
    return out;
}

double RandomForest::p_win(Venue venue, std::span<const double> features) const {
    std::size_t wins = 0;
    for (Label vote : votes(venue, features)) wins += vote == Label::win ? 1 : 0;
    return static_cast<double>(wins) / static_cast<double>(trees_.size());
}

std::string RandomForest::serialize() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : trees_) trees.push_back(nlohmann::json::parse(tree.serialize()));
    return nlohmann::json{{"trees", trees}}.dump();
}

RandomForest RandomForest::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RandomForest forest;
    for (const auto& t : j.at("trees")) forest.trees_.push_back(DecisionTree::from_json(t.dump()));
    if (forest.trees_.empty()) throw DataError("forest without trees");
    return forest;
}

}  // namespace courtcast
