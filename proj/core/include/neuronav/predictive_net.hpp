#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "neuronav/matrix.hpp"
#include "neuronav/rng.hpp"

namespace neuronav {

// One logistic hidden layer, softmax output over next states.
struct PredictiveNet {
    Matrix w1;                // inputs x hidden
    std::vector<double> b1;   // hidden
    Matrix w2;                // hidden x outputs
    std::vector<double> b2;   // outputs

    std::size_t inputs() const noexcept { return w1.rows(); }
    std::size_t hidden_dim() const noexcept { return w1.cols(); }
    std::size_t outputs() const noexcept { return w2.cols(); }

    // Weights and biases uniform in [-scale, scale].
    static PredictiveNet init(std::size_t n_states, std::size_t hidden, Rng& rng, double scale = 0.1);
    static PredictiveNet zeros(std::size_t n_states, std::size_t hidden);

    bool operator==(const PredictiveNet&) const = default;
};

struct NetForward {
    std::vector<double> probabilities;
    std::vector<double> hidden;
};

NetForward net_forward(const PredictiveNet& net, std::span<const double> x);

// Same shapes as the net.
struct NetGradients {
    double loss = 0.0;
    Matrix w1;
    std::vector<double> b1;
    Matrix w2;
    std::vector<double> b2;
};

// Cross-entropy -log p(target) and its exact gradient.
NetGradients net_gradients(const PredictiveNet& net, std::span<const double> x, std::size_t target);

// One gradient-descent step. Returns the loss before the step; throws
// TrainingError when the loss is not finite.
double net_train_step(PredictiveNet& net, std::span<const double> x, std::size_t target, double lr);

}  // namespace neuronav
