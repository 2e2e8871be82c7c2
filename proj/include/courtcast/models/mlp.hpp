#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "courtcast/models/model.hpp"

namespace courtcast {

/// One hidden layer of logistic units and a single logistic output unit,
/// trained by per-instance backpropagation on squared error.
///
/// Inputs are the one-hot venue (home, away, neutral) followed by the numeric
/// features mapped to [-1, 1] with the training set's min/max. Parameters are
/// stored flat: for each hidden unit its input weights then its bias, then the
/// output weights and the output bias.
class Mlp final : public Classifier {
public:
    Mlp() = default;
    Mlp(std::size_t numeric_inputs, std::size_t hidden_units);

    /// Network with uniform(-scale, scale) weights and identity normalization.
    static Mlp random(std::size_t numeric_inputs, std::size_t hidden_units, double scale, std::uint64_t seed);
    static Mlp fit(const TrainingSet& data, const Hyperparameters& hyper, std::uint64_t seed);
    static Mlp from_json(const std::string& text);

    std::size_t numeric_inputs() const { return numeric_inputs_; }
    std::size_t hidden_units() const { return hidden_; }
    std::size_t input_width() const { return numeric_inputs_ + 3; }
    std::vector<double>& parameters() { return params_; }
    const std::vector<double>& parameters() const { return params_; }

    /// Network input for a raw (unnormalized) feature row.
    std::vector<double> encode_input(Venue venue, std::span<const double> features) const;

    double output(std::span<const double> input) const;
    double loss(std::span<const double> input, double target) const;
    /// d loss / d parameters by backpropagation.
    std::vector<double> gradient(std::span<const double> input, double target) const;

    double p_win(Venue venue, std::span<const double> features) const override;
    std::string serialize() const override;

private:
    std::size_t numeric_inputs_ = 0;
    std::size_t hidden_ = 0;
    std::vector<double> params_;
    std::vector<double> min_;
    std::vector<double> max_;

    double forward(std::span<const double> input, std::vector<double>& hidden_out) const;
};

/// Hidden size used when none is configured: ceil((attributes + 2) / 2),
/// counting the venue as one attribute.
std::size_t default_hidden_units(std::size_t numeric_features);

/// Central finite differences of the loss for every parameter.
std::vector<double> numeric_gradient(const Mlp& net, std::span<const double> input, double target, double epsilon);

/// max_i |a_i - n_i| / max(|a_i|, |n_i|, 1e-6).
double max_relative_error(std::span<const double> analytic, std::span<const double> numeric);

/// Compares backpropagated and finite-difference gradients for one instance.
double gradient_check(const Mlp& net, Venue venue, std::span<const double> features, Label target, double epsilon);

}  // namespace courtcast
