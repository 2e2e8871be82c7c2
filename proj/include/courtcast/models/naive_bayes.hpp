#pragma once

#include <array>
#include <string>
#include <vector>

#include "courtcast/models/model.hpp"

namespace courtcast {

/// Naive Bayes with one Gaussian kernel density estimate per numeric feature
/// and class, and a Laplace-smoothed frequency table for the venue.
class NaiveBayesKde final : public Classifier {
public:
    struct ClassModel {
        double log_prior = 0.0;
        std::array<double, 3> log_venue{};
        std::vector<std::vector<double>> samples;  ///< per feature
        std::vector<double> bandwidth;             ///< per feature
    };

    static NaiveBayesKde fit(const TrainingSet& data, const Hyperparameters& hyper);
    static NaiveBayesKde from_json(const std::string& text);

    double p_win(Venue venue, std::span<const double> features) const override;
    std::string serialize() const override;

    /// log p(x_j | class) for one feature.
    double log_density(int cls, std::size_t feature, double value) const;
    const ClassModel& class_model(int cls) const { return classes_[static_cast<std::size_t>(cls)]; }

private:
    std::array<ClassModel, 2> classes_;
};

}  // namespace courtcast
