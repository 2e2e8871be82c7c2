#include "courtcast/models/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "courtcast/models/forest.hpp"
#include "courtcast/models/mlp.hpp"
#include "courtcast/models/naive_bayes.hpp"
#include "courtcast/models/tree.hpp"
#include "json.hpp"

namespace courtcast {

namespace {

constexpr const char* kFormatName = "courtcast-model";
constexpr int kFormatVersion = 1;

}  // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::naive_bayes_kde: return "naive_bayes_kde";
    case ModelKind::mlp: return "mlp";
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::random_forest: return "random_forest";
    }
    return "mlp";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "nb" || text == "naive_bayes") return ModelKind::naive_bayes_kde;
    if (text == "tree" || text == "j48") return ModelKind::decision_tree;
    if (text == "forest" || text == "rf") return ModelKind::random_forest;
    for (auto kind : kAllModelKinds) {
        if (to_string(kind) == text) return kind;
    }
    throw ConfigError("unknown model kind '" + std::string(text) + "'");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::size_t TrainingSet::wins() const {
    std::size_t n = 0;
    for (int v : y) n += static_cast<std::size_t>(v);
    return n;
}

TrainingSet make_training_set(std::span<const MatchInstance> instances) {
    if (instances.empty()) throw DataError("cannot train on an empty instance set");
    TrainingSet set;
    set.dims = instances.front().features.size();
    const FeatureScheme scheme = instances.front().scheme;
    set.x.reserve(instances.size() * set.dims);
    for (const auto& inst : instances) {
        if (inst.scheme != scheme || inst.features.size() != set.dims) {
            throw DataError("training instances mix feature schemes");
        }
        for (double v : inst.features) {
            if (!std::isfinite(v)) {
                throw DataError("non-finite feature for " + inst.first + " vs " + inst.second + " on " +
                                inst.date.to_string());
            }
        }
        set.venues.push_back(inst.location);
        set.x.insert(set.x.end(), inst.features.begin(), inst.features.end());
        set.y.push_back(inst.label == Label::win ? 1 : 0);
    }
    const std::size_t wins = set.wins();
    if (wins == 0 || wins == set.rows()) throw DataError("training data contains a single class");
    return set;
}

Label decide(double p_win, Venue venue) {
    if (p_win > 0.5) return Label::win;
    if (p_win < 0.5) return Label::loss;
    return venue == Venue::away ? Label::loss : Label::win;
}

TrainedModel::TrainedModel(ModelKind kind, FeatureScheme scheme, std::size_t train_wins, std::size_t train_rows,
                           std::shared_ptr<const Classifier> impl)
    : kind_(kind), scheme_(scheme), train_wins_(train_wins), train_rows_(train_rows), impl_(std::move(impl)) {}

Prediction TrainedModel::predict(const MatchInstance& instance) const {
    if (instance.scheme != scheme_) {
        throw ConfigError("model expects scheme " + std::string(to_string(scheme_)) + ", instance uses " +
                          std::string(to_string(instance.scheme)));
    }
    return predict(instance.location, instance.features);
}

Prediction TrainedModel::predict(Venue venue, std::span<const double> features) const {
    if (features.size() != courtcast::feature_names(scheme_).size()) {
        throw ConfigError("feature vector length does not match the model's feature list");
    }
    double p = impl_->p_win(venue, features);
    p = std::clamp(p, 0.0, 1.0);
    return {decide(p, venue), p};
}

std::string TrainedModel::to_text() const {
    nlohmann::json j = {{"format", kFormatName},
                        {"version", kFormatVersion},
                        {"kind", to_string(kind_)},
                        {"scheme", to_string(scheme_)},
                        {"features", courtcast::feature_names(scheme_)},
                        {"train_rows", train_rows_},
                        {"train_wins", train_wins_},
                        {"parameters", nlohmann::json::parse(impl_->serialize())}};
    return j.dump(1) + "\n";
}

void TrainedModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file " + path.string());
    out << to_text();
}

TrainedModel TrainedModel::from_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kFormatName) throw DataError("not a courtcast model file");
        if (j.at("version").get<int>() != kFormatVersion) throw DataError("unsupported model format version");
        const ModelKind kind = parse_model_kind(j.at("kind").get<std::string>());
        const FeatureScheme scheme = parse_scheme(j.at("scheme").get<std::string>());
        if (j.at("features").get<std::vector<std::string>>() != courtcast::feature_names(scheme)) {
            throw DataError("model feature list does not match scheme " + std::string(to_string(scheme)));
        }
        const std::string params = j.at("parameters").dump();
        std::shared_ptr<const Classifier> impl;
        switch (kind) {
        case ModelKind::naive_bayes_kde: impl = std::make_shared<NaiveBayesKde>(NaiveBayesKde::from_json(params)); break;
        case ModelKind::mlp: impl = std::make_shared<Mlp>(Mlp::from_json(params)); break;
        case ModelKind::decision_tree: impl = std::make_shared<DecisionTree>(DecisionTree::from_json(params)); break;
        case ModelKind::random_forest: impl = std::make_shared<RandomForest>(RandomForest::from_json(params)); break;
        }
        return TrainedModel(kind, scheme, j.at("train_wins").get<std::size_t>(), j.at("train_rows").get<std::size_t>(),
                            std::move(impl));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

TrainedModel train(std::span<const MatchInstance> instances, ModelKind kind, const Hyperparameters& hyper,
                   std::uint64_t seed) {
    const TrainingSet data = make_training_set(instances);
    const FeatureScheme scheme = instances.front().scheme;
    std::shared_ptr<const Classifier> impl;
    switch (kind) {
    case ModelKind::naive_bayes_kde: impl = std::make_shared<NaiveBayesKde>(NaiveBayesKde::fit(data, hyper)); break;
    case ModelKind::mlp: impl = std::make_shared<Mlp>(Mlp::fit(data, hyper, seed)); break;
    case ModelKind::decision_tree: impl = std::make_shared<DecisionTree>(DecisionTree::fit(data, hyper)); break;
    case ModelKind::random_forest: impl = std::make_shared<RandomForest>(RandomForest::fit(data, hyper, seed)); break;
    }
    return TrainedModel(kind, scheme, data.wins(), data.rows(), std::move(impl));
}

}  // namespace courtcast
