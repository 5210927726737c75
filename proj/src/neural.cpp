#include "fbmc/neural.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbmc/sysconfig.hpp"

namespace fbmc {

std::string to_string(Activation a) { return a == Activation::Linear ? "linear" : "sigmoid"; }
std::string to_string(UpdateRule r) { return r == UpdateRule::Delta ? "delta" : "literal"; }

Activation parse_activation(const std::string& text) {
    if (text == "linear") return Activation::Linear;
    if (text == "sigmoid") return Activation::Sigmoid;
    throw ConfigError("unknown activation '" + text + "'");
}

UpdateRule parse_update_rule(const std::string& text) {
    if (text == "delta") return UpdateRule::Delta;
    if (text == "literal") return UpdateRule::Literal;
    throw ConfigError("unknown update rule '" + text + "'");
}

double activation(double a, Activation kind) {
    if (kind == Activation::Linear) return a;
    return 1.0 / (1.0 + std::exp(-a));
}

double training_error(double desired, double output) {
    const double e = desired - output;
    return 0.5 * e * e;
}

std::vector<double> weight_update(std::span<const double> weights, std::span<const double> inputs,
                                  double desired, double output, double rate, UpdateRule rule) {
    if (weights.size() != inputs.size()) throw std::invalid_argument("weights and inputs differ in length");
    if (!(rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    const double step = rule == UpdateRule::Delta ? rate * (desired - output)
                                                  : -rate * training_error(desired, output);
    std::vector<double> out(weights.begin(), weights.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += step * inputs[i];
    return out;
}

bool NeuralEqualizer::converged() const noexcept {
    return trained() && std::all_of(carriers_.begin(), carriers_.end(),
                                    [](const CarrierPerceptron& c) { return c.converged; });
}

cplx NeuralEqualizer::apply(std::size_t carrier, cplx y) const {
    const CarrierPerceptron& p = carriers_.at(carrier);
    const double x0 = y.real(), x1 = y.imag();
    return {activation(p.weights[0][0] * x0 + p.weights[0][1] * x1 + p.bias[0], hyper_.activation),
            activation(p.weights[1][0] * x0 + p.weights[1][1] * x1 + p.bias[1], hyper_.activation)};
}

namespace {

double mean_error(const CarrierPerceptron& p, std::span<const cplx> inputs, std::span<const cplx> targets,
                  Activation act) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const double x0 = inputs[i].real(), x1 = inputs[i].imag();
        const double y0 = activation(p.weights[0][0] * x0 + p.weights[0][1] * x1 + p.bias[0], act);
        const double y1 = activation(p.weights[1][0] * x0 + p.weights[1][1] * x1 + p.bias[1], act);
        sum += training_error(targets[i].real(), y0) + training_error(targets[i].imag(), y1);
    }
    return sum / (2.0 * static_cast<double>(inputs.size()));
}

CarrierPerceptron train_carrier(std::span<const cplx> inputs, std::span<const cplx> targets,
                                const NnHyperParams& hyper, std::size_t carrier) {
    CarrierPerceptron p;
    p.mean_error = mean_error(p, inputs, targets, hyper.activation);
    p.converged = p.mean_error <= hyper.tolerance;

    while (!p.converged && p.epochs < hyper.max_epochs) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const std::array<double, 3> x{inputs[i].real(), inputs[i].imag(), 1.0};
            const std::array<double, 2> d{targets[i].real(), targets[i].imag()};
            for (std::size_t r = 0; r < 2; ++r) {
                const double y = activation(p.weights[r][0] * x[0] + p.weights[r][1] * x[1] + p.bias[r],
                                            hyper.activation);
                // Same arithmetic as weight_update, without the allocation.
                const double step = hyper.rule == UpdateRule::Delta ? hyper.delta * (d[r] - y)
                                                                    : -hyper.delta * training_error(d[r], y);
                p.weights[r][0] += step * x[0];
                p.weights[r][1] += step * x[1];
                if (hyper.train_bias) p.bias[r] += step;
            }
        }
        ++p.epochs;
        p.mean_error = mean_error(p, inputs, targets, hyper.activation);
        if (!std::isfinite(p.mean_error) || !std::isfinite(p.weights[0][0]) || !std::isfinite(p.weights[0][1]) ||
            !std::isfinite(p.weights[1][0]) || !std::isfinite(p.weights[1][1])) {
            std::ostringstream msg;
            msg << "perceptron training diverged on carrier " << carrier << " after " << p.epochs
                << " epochs (delta=" << hyper.delta << ", activation=" << to_string(hyper.activation)
                << ", rule=" << to_string(hyper.rule) << ")";
            throw TrainingError(msg.str(), carrier);
        }
        p.converged = p.mean_error <= hyper.tolerance;
    }
    return p;
}

}  // namespace

NeuralEqualizer nn_train(const TrainingSet& set, const NnHyperParams& hyper) {
    if (set.inputs.size() != set.targets.size())
        throw std::invalid_argument("training inputs and targets cover different carriers");
    if (!(hyper.delta > 0.0)) throw ConfigError("nn delta must be positive");
    std::vector<CarrierPerceptron> carriers(set.inputs.size());
    for (std::size_t c = 0; c < carriers.size(); ++c) {
        if (set.inputs[c].size() != set.targets[c].size() || set.inputs[c].empty())
            throw std::invalid_argument("each carrier needs matching, non-empty training pairs");
        carriers[c] = train_carrier(set.inputs[c], set.targets[c], hyper, c);
    }
    return NeuralEqualizer(hyper, std::move(carriers));
}

std::vector<cplx> nn_equalize(std::span<const cplx> rx, std::size_t carrier, const NeuralEqualizer& eq) {
    if (!eq.trained()) throw std::logic_error("neural equalizer used before training");
    std::vector<cplx> out(rx.size());
    for (std::size_t i = 0; i < rx.size(); ++i) out[i] = eq.apply(carrier, rx[i]);
    return out;
}

}  // namespace fbmc
