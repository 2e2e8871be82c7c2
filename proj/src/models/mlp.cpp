#include "courtcast/models/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace courtcast {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::size_t default_hidden_units(std::size_t numeric_features) {
    return (numeric_features + 1 + 2 + 1) / 2;
}

Mlp::Mlp(std::size_t numeric_inputs, std::size_t hidden_units)
    : numeric_inputs_(numeric_inputs),
      hidden_(hidden_units),
      params_(hidden_units * (numeric_inputs + 3 + 1) + hidden_units + 1, 0.0),
      min_(numeric_inputs, -1.0),
      max_(numeric_inputs, 1.0) {
    if (hidden_units == 0) throw ConfigError("MLP needs at least one hidden unit");
}

Mlp Mlp::random(std::size_t numeric_inputs, std::size_t hidden_units, double scale, std::uint64_t seed) {
    Mlp net(numeric_inputs, hidden_units);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    for (auto& w : net.params_) w = dist(rng);
    return net;
}

std::vector<double> Mlp::encode_input(Venue venue, std::span<const double> features) const {
    if (features.size() != numeric_inputs_) throw InvariantError("MLP input width mismatch");
    std::vector<double> input(input_width(), 0.0);
    input[static_cast<std::size_t>(venue)] = 1.0;
    for (std::size_t j = 0; j < numeric_inputs_; ++j) {
        const double range = max_[j] - min_[j];
        input[3 + j] = range > 0.0 ? 2.0 * (features[j] - min_[j]) / range - 1.0 : 0.0;
    }
    return input;
}

double Mlp::forward(std::span<const double> input, std::vector<double>& hidden_out) const {
    const std::size_t width = input_width();
    const std::size_t stride = width + 1;
    hidden_out.resize(hidden_);
    for (std::size_t h = 0; h < hidden_; ++h) {
        const double* w = params_.data() + h * stride;
        double z = w[width];
        for (std::size_t i = 0; i < width; ++i) z += w[i] * input[i];
        hidden_out[h] = logistic(z);
    }
    const double* v = params_.data() + hidden_ * stride;
    double z = v[hidden_];
    for (std::size_t h = 0; h < hidden_; ++h) z += v[h] * hidden_out[h];
    return logistic(z);
}

double Mlp::output(std::span<const double> input) const {
    std::vector<double> hidden;
    return forward(input, hidden);
}

double Mlp::loss(std::span<const double> input, double target) const {
    const double o = output(input);
    return 0.5 * (target - o) * (target - o);
}

std::vector<double> Mlp::gradient(std::span<const double> input, double target) const {
    const std::size_t width = input_width();
    const std::size_t stride = width + 1;
    std::vector<double> hidden;
    const double o = forward(input, hidden);
    std::vector<double> grad(params_.size(), 0.0);

    const double delta_out = (o - target) * o * (1.0 - o);
    double* gv = grad.data() + hidden_ * stride;
    const double* v = params_.data() + hidden_ * stride;
    for (std::size_t h = 0; h < hidden_; ++h) gv[h] = delta_out * hidden[h];
    gv[hidden_] = delta_out;

    for (std::size_t h = 0; h < hidden_; ++h) {
        const double delta_h = delta_out * v[h] * hidden[h] * (1.0 - hidden[h]);
        double* g = grad.data() + h * stride;
        for (std::size_t i = 0; i < width; ++i) g[i] = delta_h * input[i];
        g[width] = delta_h;
    }
    return grad;
}

Mlp Mlp::fit(const TrainingSet& data, const Hyperparameters& hyper, std::uint64_t seed) {
    const std::size_t hidden = hyper.mlp_hidden_units > 0 ? static_cast<std::size_t>(hyper.mlp_hidden_units)
                                                          : default_hidden_units(data.dims);
    if (hyper.mlp_epochs < 0) throw ConfigError("mlp_epochs must be non-negative");
    Mlp net = random(data.dims, hidden, 0.05, mix_seed(seed, 1));
    for (std::size_t j = 0; j < data.dims; ++j) {
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            lo = std::min(lo, data.row(i)[j]);
            hi = std::max(hi, data.row(i)[j]);
        }
        net.min_[j] = lo;
        net.max_[j] = hi;
    }

    std::vector<std::vector<double>> inputs;
    inputs.reserve(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) inputs.push_back(net.encode_input(data.venues[i], data.row(i)));

    std::vector<std::size_t> order(data.rows());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(mix_seed(seed, 2));
    std::vector<double> velocity(net.params_.size(), 0.0);
    for (int epoch = 0; epoch < hyper.mlp_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) {
            const auto grad = net.gradient(inputs[idx], static_cast<double>(data.y[idx]));
            for (std::size_t k = 0; k < velocity.size(); ++k) {
                velocity[k] = hyper.mlp_momentum * velocity[k] - hyper.mlp_learning_rate * grad[k];
                net.params_[k] += velocity[k];
            }
        }
    }
    return net;
}

double Mlp::p_win(Venue venue, std::span<const double> features) const {
    return output(encode_input(venue, features));
}

std::string Mlp::serialize() const {
    nlohmann::json j = {{"numeric_inputs", numeric_inputs_},
                        {"hidden_units", hidden_},
                        {"min", min_},
                        {"max", max_},
                        {"parameters", params_}};
    return j.dump();
}

Mlp Mlp::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Mlp net(j.at("numeric_inputs").get<std::size_t>(), j.at("hidden_units").get<std::size_t>());
    net.min_ = j.at("min").get<std::vector<double>>();
    net.max_ = j.at("max").get<std::vector<double>>();
    net.params_ = j.at("parameters").get<std::vector<double>>();
    if (net.params_.size() != net.hidden_ * (net.input_width() + 1) + net.hidden_ + 1) {
        throw DataError("MLP parameter count does not match its layout");
    }
    return net;
}

std::vector<double> numeric_gradient(const Mlp& net, std::span<const double> input, double target, double epsilon) {
    Mlp probe = net;
    auto& params = probe.parameters();
    std::vector<double> grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double saved = params[k];
        params[k] = saved + epsilon;
        const double up = probe.loss(input, target);
        params[k] = saved - epsilon;
        const double down = probe.loss(input, target);
        params[k] = saved;
        grad[k] = (up - down) / (2.0 * epsilon);
    }
    return grad;
}

double max_relative_error(std::span<const double> analytic, std::span<const double> numeric) {
    if (analytic.size() != numeric.size()) throw InvariantError("gradient length mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        const double scale = std::max({std::abs(analytic[k]), std::abs(numeric[k]), 1e-6});
        worst = std::max(worst, std::abs(analytic[k] - numeric[k]) / scale);
    }
    return worst;
}

double gradient_check(const Mlp& net, Venue venue, std::span<const double> features, Label target, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1e-3)) throw std::domain_error("epsilon must lie in (0, 1e-3]");
    const auto input = net.encode_input(venue, features);
    const double t = target == Label::win ? 1.0 : 0.0;
    return max_relative_error(net.gradient(input, t), numeric_gradient(net, input, t, epsilon));
}

}  // namespace courtcast
