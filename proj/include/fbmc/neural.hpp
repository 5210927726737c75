#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbmc/grid.hpp"

namespace fbmc {

enum class Activation { Linear, Sigmoid };
enum class UpdateRule { Delta, Literal };

std::string to_string(Activation a);
std::string to_string(UpdateRule r);
Activation parse_activation(const std::string& text);
UpdateRule parse_update_rule(const std::string& text);

/// linear: a; sigmoid: 1 / (1 + e^-a).
double activation(double a, Activation kind);

/// 0.5 (d - y)^2
double training_error(double desired, double output);

/// One perceptron update.
///   delta:   w + rate (d - y) x
///   literal: w - rate * 0.5 (d - y)^2 * x
/// Returns the new weights; `weights` and `inputs` must have equal length.
std::vector<double> weight_update(std::span<const double> weights, std::span<const double> inputs,
                                  double desired, double output, double rate, UpdateRule rule);

struct NnHyperParams {
    double delta = 0.1;
    std::size_t max_epochs = 3000;
    double tolerance = 1e-9;
    Activation activation = Activation::Linear;
    UpdateRule rule = UpdateRule::Delta;
    bool train_bias = false;
};

/// Two perceptrons sharing the input (Re y, Im y): row r of `weights` and
/// `bias[r]` produce output component r.
struct CarrierPerceptron {
    std::array<std::array<double, 2>, 2> weights{};
    std::array<double, 2> bias{};
    std::size_t epochs = 0;
    double mean_error = 0.0;
    bool converged = false;
};

/// Training pairs per carrier: inputs[c][i] is the received sample and
/// targets[c][i] the value it should map to.
struct TrainingSet {
    std::vector<std::vector<cplx>> inputs;
    std::vector<std::vector<cplx>> targets;
};

class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, std::size_t carrier)
        : std::runtime_error(what), carrier_(carrier) {}
    std::size_t carrier() const noexcept { return carrier_; }

private:
    std::size_t carrier_;
};

class NeuralEqualizer {
public:
    NeuralEqualizer() = default;
    NeuralEqualizer(NnHyperParams hyper, std::vector<CarrierPerceptron> carriers)
        : hyper_(hyper), carriers_(std::move(carriers)) {}

    bool trained() const noexcept { return !carriers_.empty(); }
    /// True when every carrier met the error tolerance within the epoch budget.
    bool converged() const noexcept;
    std::size_t carriers() const noexcept { return carriers_.size(); }
    const CarrierPerceptron& carrier(std::size_t c) const { return carriers_.at(c); }
    const NnHyperParams& hyper() const noexcept { return hyper_; }

    /// f(W (Re y, Im y) + b) for one carrier.
    cplx apply(std::size_t carrier, cplx y) const;

private:
    NnHyperParams hyper_;
    std::vector<CarrierPerceptron> carriers_;
};

/// Trains each carrier independently: every epoch walks the carrier's pairs
/// in order and updates both perceptrons; training stops once the mean
/// per-component error over the set drops to the tolerance or the epoch
/// budget is spent. Weights start at zero. Non-finite weights throw
/// TrainingError naming the carrier.
NeuralEqualizer nn_train(const TrainingSet& set, const NnHyperParams& hyper);

std::vector<cplx> nn_equalize(std::span<const cplx> rx, std::size_t carrier, const NeuralEqualizer& eq);

}  // namespace fbmc
