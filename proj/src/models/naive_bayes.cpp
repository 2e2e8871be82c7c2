#include "courtcast/models/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace courtcast {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

std::size_t venue_index(Venue v) { return static_cast<std::size_t>(v); }

double sample_sd(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

NaiveBayesKde NaiveBayesKde::fit(const TrainingSet& data, const Hyperparameters& hyper) {
    NaiveBayesKde model;
    const std::size_t n = data.rows();
    for (int cls = 0; cls < 2; ++cls) {
        auto& cm = model.classes_[static_cast<std::size_t>(cls)];
        cm.samples.assign(data.dims, {});
        std::array<double, 3> venue_counts{};
        std::size_t n_c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (data.y[i] != cls) continue;
            ++n_c;
            venue_counts[venue_index(data.venues[i])] += 1.0;
            const auto row = data.row(i);
            for (std::size_t j = 0; j < data.dims; ++j) cm.samples[j].push_back(row[j]);
        }
        cm.log_prior = std::log(static_cast<double>(n_c) / static_cast<double>(n));
        for (std::size_t v = 0; v < 3; ++v) {
            cm.log_venue[v] = std::log((venue_counts[v] + 1.0) / (static_cast<double>(n_c) + 3.0));
        }
        cm.bandwidth.resize(data.dims);
        const double shrink = std::pow(static_cast<double>(n_c), -0.2);
        for (std::size_t j = 0; j < data.dims; ++j) {
            cm.bandwidth[j] = hyper.nb_fixed_bandwidth
                                  ? *hyper.nb_fixed_bandwidth
                                  : std::max(hyper.nb_bandwidth_floor, sample_sd(cm.samples[j]) * shrink);
            std::sort(cm.samples[j].begin(), cm.samples[j].end());
        }
    }
    return model;
}

double NaiveBayesKde::log_density(int cls, std::size_t feature, double value) const {
    const auto& cm = classes_[static_cast<std::size_t>(cls)];
    const auto& xs = cm.samples[feature];
    const double h = cm.bandwidth[feature];
    // log of the mean kernel value, shifted by the largest exponent
    double max_exp = -INFINITY;
    for (double v : xs) {
        const double z = (value - v) / h;
        max_exp = std::max(max_exp, -0.5 * z * z);
    }
    double acc = 0.0;
    for (double v : xs) {
        const double z = (value - v) / h;
        acc += std::exp(-0.5 * z * z - max_exp);
    }
    return max_exp + std::log(acc / static_cast<double>(xs.size())) - std::log(h) - kLogSqrt2Pi;
}

double NaiveBayesKde::p_win(Venue venue, std::span<const double> features) const {
    std::array<double, 2> log_post{};
    for (int cls = 0; cls < 2; ++cls) {
        const auto& cm = classes_[static_cast<std::size_t>(cls)];
        double lp = cm.log_prior + cm.log_venue[venue_index(venue)];
        for (std::size_t j = 0; j < features.size(); ++j) lp += log_density(cls, j, features[j]);
        log_post[static_cast<std::size_t>(cls)] = lp;
    }
    const double diff = log_post[0] - log_post[1];  // loss minus win
    if (diff == 0.0) return 0.5;
    return 1.0 / (1.0 + std::exp(diff));
}

std::string NaiveBayesKde::serialize() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& cm : classes_) {
        j.push_back({{"log_prior", cm.log_prior},
                     {"log_venue", cm.log_venue},
                     {"samples", cm.samples},
                     {"bandwidth", cm.bandwidth}});
    }
    return j.dump();
}

NaiveBayesKde NaiveBayesKde::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    NaiveBayesKde model;
    for (std::size_t c = 0; c < 2; ++c) {
        auto& cm = model.classes_[c];
        cm.log_prior = j.at(c).at("log_prior").get<double>();
        cm.log_venue = j.at(c).at("log_venue").get<std::array<double, 3>>();
        cm.samples = j.at(c).at("samples").get<std::vector<std::vector<double>>>();
        cm.bandwidth = j.at(c).at("bandwidth").get<std::vector<double>>();
    }
    return model;
}

}  // namespace courtcast
