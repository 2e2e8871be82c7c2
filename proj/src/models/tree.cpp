#include "courtcast/models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace courtcast {

namespace {

double entropy(double wins, double total) {
    if (total <= 0.0 || wins <= 0.0 || wins >= total) return 0.0;
    const double p = wins / total;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double split_info(std::span<const double> branch_sizes, double total) {
    double si = 0.0;
    for (double n : branch_sizes) {
        if (n > 0.0) si -= (n / total) * std::log2(n / total);
    }
    return si;
}

struct Candidate {
    int attribute = -1;
    double threshold = 0.0;
    double gain = 0.0;
    double split_info = 0.0;
};

}  // namespace

class TreeBuilder {
public:
    TreeBuilder(const TrainingSet& data, const TreeOptions& options, std::mt19937_64* rng)
        : data_(data), options_(options), rng_(rng) {}

    DecisionTree build(std::vector<std::size_t> rows) {
        DecisionTree tree;
        grow(tree, std::move(rows));
        return tree;
    }

private:
    int grow(DecisionTree& tree, std::vector<std::size_t> rows) {
        const int index = static_cast<int>(tree.nodes_.size());
        tree.nodes_.emplace_back();
        std::size_t wins = 0;
        for (auto r : rows) wins += static_cast<std::size_t>(data_.y[r]);
        {
            auto& node = tree.nodes_.back();
            node.rows = rows.size();
            node.wins = wins;
            node.p_win = rows.empty() ? 0.5 : static_cast<double>(wins) / static_cast<double>(rows.size());
        }
        if (wins == 0 || wins == rows.size() || rows.size() < 2 * options_.min_rows) return index;

        const Candidate best = choose_split(rows, wins);
        if (best.attribute < 0) return index;

        std::vector<std::vector<std::size_t>> parts(best.attribute == 0 ? 3 : 2);
        for (auto r : rows) parts[branch_of(best, r)].push_back(r);
        const double parent_p = tree.nodes_[static_cast<std::size_t>(index)].p_win;

        tree.nodes_[static_cast<std::size_t>(index)].attribute = best.attribute;
        tree.nodes_[static_cast<std::size_t>(index)].threshold = best.threshold;
        std::vector<int> children;
        for (auto& part : parts) {
            if (part.empty()) {
                DecisionTree::Node leaf;
                leaf.p_win = parent_p;
                children.push_back(static_cast<int>(tree.nodes_.size()));
                tree.nodes_.push_back(leaf);
            } else {
                children.push_back(grow(tree, std::move(part)));
            }
        }
        tree.nodes_[static_cast<std::size_t>(index)].children = std::move(children);
        return index;
    }

    std::size_t branch_of(const Candidate& c, std::size_t row) const {
        if (c.attribute == 0) return static_cast<std::size_t>(data_.venues[row]);
        return data_.row(row)[static_cast<std::size_t>(c.attribute - 1)] <= c.threshold ? 0 : 1;
    }

    std::vector<int> attributes_to_try() {
        std::vector<int> attrs(data_.dims + 1);
        std::iota(attrs.begin(), attrs.end(), 0);
        const std::size_t k = options_.features_per_split;
        if (k > 0 && k < attrs.size() && rng_ != nullptr) {
            for (std::size_t i = 0; i < k; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, attrs.size() - 1);
                std::swap(attrs[i], attrs[pick(*rng_)]);
            }
            attrs.resize(k);
            std::sort(attrs.begin(), attrs.end());
        }
        return attrs;
    }

    Candidate choose_split(const std::vector<std::size_t>& rows, std::size_t wins) {
        const double n = static_cast<double>(rows.size());
        const double parent_entropy = entropy(static_cast<double>(wins), n);
        std::vector<Candidate> candidates;
        for (int attr : attributes_to_try()) {
            Candidate c = attr == 0 ? venue_split(rows, n, parent_entropy) : numeric_split(rows, attr, n, parent_entropy);
            if (c.attribute >= 0 && c.gain > 1e-12) candidates.push_back(c);
        }
        if (candidates.empty()) return {};
        if (options_.criterion == SplitCriterion::info_gain) {
            return *std::max_element(candidates.begin(), candidates.end(),
                                     [](const Candidate& a, const Candidate& b) { return a.gain < b.gain; });
        }
        double mean_gain = 0.0;
        for (const auto& c : candidates) mean_gain += c.gain;
        mean_gain /= static_cast<double>(candidates.size());
        Candidate best;
        double best_ratio = -1.0;
        for (const auto& c : candidates) {
            if (c.gain + 1e-12 < mean_gain || c.split_info <= 0.0) continue;
            const double ratio = c.gain / c.split_info;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = c;
            }
        }
        return best;
    }

    Candidate venue_split(const std::vector<std::size_t>& rows, double n, double parent_entropy) const {
        std::array<double, 3> total{};
        std::array<double, 3> won{};
        for (auto r : rows) {
            const auto v = static_cast<std::size_t>(data_.venues[r]);
            total[v] += 1.0;
            won[v] += data_.y[r];
        }
        int big_branches = 0;
        for (double t : total) big_branches += t >= static_cast<double>(options_.min_rows) ? 1 : 0;
        if (big_branches < 2) return {};
        double child_entropy = 0.0;
        for (std::size_t v = 0; v < 3; ++v) child_entropy += total[v] / n * entropy(won[v], total[v]);
        return {0, 0.0, parent_entropy - child_entropy, split_info(total, n)};
    }

    Candidate numeric_split(const std::vector<std::size_t>& rows, int attr, double n, double parent_entropy) const {
        const auto j = static_cast<std::size_t>(attr - 1);
        std::vector<std::pair<double, int>> values;
        values.reserve(rows.size());
        for (auto r : rows) values.emplace_back(data_.row(r)[j], data_.y[r]);
        std::sort(values.begin(), values.end());

        const std::size_t min_rows = options_.min_rows;
        const std::size_t total_wins = static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(), [](const auto& p) { return p.second == 1; }));
        Candidate best;
        std::size_t left_wins = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            left_wins += static_cast<std::size_t>(values[i - 1].second);
            if (i < min_rows || values.size() - i < min_rows) continue;
            if (!(values[i - 1].first < values[i].first)) continue;
            const double nl = static_cast<double>(i);
            const double nr = n - nl;
            const double child = nl / n * entropy(static_cast<double>(left_wins), nl) +
                                 nr / n * entropy(static_cast<double>(total_wins - left_wins), nr);
            const double gain = parent_entropy - child;
            if (best.attribute < 0 || gain > best.gain) {
                double mid = 0.5 * (values[i - 1].first + values[i].first);
                if (!(mid < values[i].first)) mid = values[i - 1].first;
                const std::array<double, 2> sizes = {nl, nr};
                best = {attr, mid, gain, split_info(sizes, n)};
            }
        }
        return best;
    }

    const TrainingSet& data_;
    const TreeOptions& options_;
    std::mt19937_64* rng_;
};

DecisionTree DecisionTree::fit(const TrainingSet& data, std::vector<std::size_t> rows, const TreeOptions& options,
                               std::mt19937_64* rng) {
    return TreeBuilder(data, options, rng).build(std::move(rows));
}

DecisionTree DecisionTree::fit(const TrainingSet& data, const Hyperparameters& hyper) {
    if (!(hyper.tree_min_fraction >= 0.0 && hyper.tree_min_fraction < 1.0)) {
        throw ConfigError("tree_min_fraction must lie in [0, 1)");
    }
    TreeOptions options;
    options.criterion = SplitCriterion::gain_ratio;
    options.min_rows = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(hyper.tree_min_fraction * static_cast<double>(data.rows()))));
    std::vector<std::size_t> rows(data.rows());
    std::iota(rows.begin(), rows.end(), 0);
    return fit(data, std::move(rows), options);
}

double DecisionTree::p_win(Venue venue, std::span<const double> features) const {
    std::size_t at = 0;
    while (nodes_[at].attribute >= 0) {
        const auto& node = nodes_[at];
        std::size_t branch = 0;
        if (node.attribute == 0) {
            branch = static_cast<std::size_t>(venue);
        } else {
            branch = features[static_cast<std::size_t>(node.attribute - 1)] <= node.threshold ? 0 : 1;
        }
        at = static_cast<std::size_t>(node.children[branch]);
    }
    return nodes_[at].p_win;
}

std::size_t DecisionTree::depth() const {
    std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
        std::size_t d = 0;
        for (int c : nodes_[i].children) d = std::max(d, walk(static_cast<std::size_t>(c)));
        return nodes_[i].attribute < 0 ? 0 : d + 1;
    };
    return nodes_.empty() ? 0 : walk(0);
}

std::string DecisionTree::serialize() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_) {
        nodes.push_back({{"attribute", n.attribute},
                         {"threshold", n.threshold},
                         {"children", n.children},
                         {"rows", n.rows},
                         {"wins", n.wins},
                         {"p_win", n.p_win}});
    }
    return nlohmann::json{{"nodes", nodes}}.dump();
}

DecisionTree DecisionTree::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    DecisionTree tree;
    for (const auto& n : j.at("nodes")) {
        Node node;
        node.attribute = n.at("attribute").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.children = n.at("children").get<std::vector<int>>();
        node.rows = n.at("rows").get<std::size_t>();
        node.wins = n.at("wins").get<std::size_t>();
        node.p_win = n.at("p_win").get<double>();
        tree.nodes_.push_back(std::move(node));
    }
    for (const auto& n : tree.nodes_) {
        for (int c : n.children) {
            if (c <= 0 || static_cast<std::size_t>(c) >= tree.nodes_.size()) throw DataError("corrupt tree node index");
        }
    }
    if (tree.nodes_.empty()) throw DataError("empty tree");
    return tree;
}

}  // namespace courtcast
