#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "courtcast/features.hpp"

namespace courtcast {

enum class ModelKind { naive_bayes_kde, mlp, decision_tree, random_forest };

inline constexpr std::array<ModelKind, 4> kAllModelKinds = {ModelKind::naive_bayes_kde, ModelKind::mlp,
                                                            ModelKind::decision_tree, ModelKind::random_forest};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct Hyperparameters {
    // Naive Bayes with Gaussian kernels: h = sd * n^(-1/5), floored.
    double nb_bandwidth_floor = 1e-6;
    std::optional<double> nb_fixed_bandwidth;

    // MLP; hidden_units == 0 means ceil((attributes + 2) / 2).
    int mlp_hidden_units = 0;
    double mlp_learning_rate = 0.3;
    double mlp_momentum = 0.2;
    int mlp_epochs = 500;

    // Decision tree: nodes smaller than this fraction of the training rows are not split.
    double tree_min_fraction = 0.01;

    // Random forest; features_per_split == 0 means floor(sqrt(attributes)).
    int forest_trees = 20;
    int forest_features_per_split = 0;
};

/// Training rows in the form the learners consume.
struct TrainingSet {
    std::vector<Venue> venues;
    std::vector<double> x;  ///< row-major, rows() x dims
    std::vector<int> y;     ///< 1 = win
    std::size_t dims = 0;

    std::size_t rows() const { return y.size(); }
    std::span<const double> row(std::size_t i) const { return {x.data() + i * dims, dims}; }
    std::size_t wins() const;
};

/// Rejects empty or single-class input and non-finite features.
TrainingSet make_training_set(std::span<const MatchInstance> instances);

struct Prediction {
    Label label = Label::loss;
    double p_win = 0.5;
    double p_loss() const { return 1.0 - p_win; }
};

/// p_win >= 0.5 predicts a win; an exact 0.5 goes to the home team, or to the
/// first team at a neutral site.
Label decide(double p_win, Venue venue);

/// Per-kind learned state behind TrainedModel.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual double p_win(Venue venue, std::span<const double> features) const = 0;
    virtual std::string serialize() const = 0;
};

class TrainedModel {
public:
    TrainedModel(ModelKind kind, FeatureScheme scheme, std::size_t train_wins, std::size_t train_rows,
                 std::shared_ptr<const Classifier> impl);

    ModelKind kind() const { return kind_; }
    FeatureScheme scheme() const { return scheme_; }
    const std::vector<std::string>& feature_names() const { return courtcast::feature_names(scheme_); }
    std::size_t train_wins() const { return train_wins_; }
    std::size_t train_rows() const { return train_rows_; }
    const Classifier& impl() const { return *impl_; }

    /// Throws ConfigError when the instance was encoded with another scheme.
    Prediction predict(const MatchInstance& instance) const;
    Prediction predict(Venue venue, std::span<const double> features) const;

    void save(const std::filesystem::path& path) const;
    std::string to_text() const;
    static TrainedModel load(const std::filesystem::path& path);
    static TrainedModel from_text(const std::string& text);

private:
    ModelKind kind_;
    FeatureScheme scheme_;
    std::size_t train_wins_;
    std::size_t train_rows_;
    std::shared_ptr<const Classifier> impl_;
};

/// Deterministic for a given seed. Instances must share one feature scheme.
TrainedModel train(std::span<const MatchInstance> instances, ModelKind kind, const Hyperparameters& hyper,
                   std::uint64_t seed);

/// Derives independent sub-seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace courtcast
