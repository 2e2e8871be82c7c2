#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "courtcast/models/tree.hpp"

namespace courtcast {

/// Bagged unpruned trees with random attribute subsets per split.
/// p_win is the share of trees voting for a win.
class RandomForest final : public Classifier {
public:
    static RandomForest fit(const TrainingSet& data, const Hyperparameters& hyper, std::uint64_t seed);
    static RandomForest from_json(const std::string& text);

    double p_win(Venue venue, std::span<const double> features) const override;
    std::string serialize() const override;

    std::vector<Label> votes(Venue venue, std::span<const double> features) const;
    const std::vector<DecisionTree>& trees() const { return trees_; }

private:
    std::vector<DecisionTree> trees_;
};

}  // namespace courtcast
