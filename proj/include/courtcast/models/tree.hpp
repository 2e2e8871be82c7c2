#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "courtcast/models/model.hpp"

namespace courtcast {

enum class SplitCriterion { gain_ratio, info_gain };

struct TreeOptions {
    SplitCriterion criterion = SplitCriterion::gain_ratio;
    /// A split is admissible only when at least two branches hold this many rows.
    std::size_t min_rows = 2;
    /// Attributes examined per node; 0 means all. Attribute 0 is the venue.
    std::size_t features_per_split = 0;
};

/// C4.5-style decision tree: binary threshold splits on numeric features at
/// midpoints between distinct values, a three-way split on the venue.
class DecisionTree final : public Classifier {
public:
    struct Node {
        int attribute = -1;  ///< -1 leaf, 0 venue, j >= 1 numeric feature j - 1
        double threshold = 0.0;
        std::vector<int> children;  ///< numeric: {<= threshold, > threshold}; venue: by Venue
        std::size_t rows = 0;
        std::size_t wins = 0;
        double p_win = 0.5;
    };

    /// `rows` indexes into `data` (duplicates allowed, as in a bootstrap sample).
    static DecisionTree fit(const TrainingSet& data, std::vector<std::size_t> rows, const TreeOptions& options,
                            std::mt19937_64* rng = nullptr);
    static DecisionTree fit(const TrainingSet& data, const Hyperparameters& hyper);
    static DecisionTree from_json(const std::string& text);

    double p_win(Venue venue, std::span<const double> features) const override;
    std::string serialize() const override;

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t depth() const;

private:
    std::vector<Node> nodes_;

    friend class TreeBuilder;
};

}  // namespace courtcast
