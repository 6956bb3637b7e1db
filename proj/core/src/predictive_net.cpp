#include "neuronav/predictive_net.hpp"

#include <algorithm>
#include <cmath>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void fill_uniform(std::vector<double>& v, Rng& rng, double scale) {
    for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
}

}  // namespace

PredictiveNet PredictiveNet::zeros(std::size_t n_states, std::size_t hidden) {
    return PredictiveNet{Matrix(n_states, hidden), std::vector<double>(hidden, 0.0), Matrix(hidden, n_states),
                         std::vector<double>(n_states, 0.0)};
}

PredictiveNet PredictiveNet::init(std::size_t n_states, std::size_t hidden, Rng& rng, double scale) {
    PredictiveNet net = zeros(n_states, hidden);
    fill_uniform(net.w1.data(), rng, scale);
    fill_uniform(net.b1, rng, scale);
    fill_uniform(net.w2.data(), rng, scale);
    fill_uniform(net.b2, rng, scale);
    return net;
}

NetForward net_forward(const PredictiveNet& net, std::span<const double> x) {
    if (x.size() != net.inputs()) throw ContractError("net_forward: input size mismatch");
    const std::size_t H = net.hidden_dim();
    const std::size_t O = net.outputs();
    NetForward out;
    out.hidden = net.b1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        const auto w = net.w1.row(i);
        for (std::size_t j = 0; j < H; ++j) out.hidden[j] += x[i] * w[j];
    }
    for (auto& h : out.hidden) h = logistic(h);

    std::vector<double> logits = net.b2;
    for (std::size_t j = 0; j < H; ++j) {
        const auto w = net.w2.row(j);
        for (std::size_t k = 0; k < O; ++k) logits[k] += out.hidden[j] * w[k];
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    out.probabilities.resize(O);
    for (std::size_t k = 0; k < O; ++k) {
        out.probabilities[k] = std::exp(logits[k] - top);
        total += out.probabilities[k];
    }
    for (auto& p : out.probabilities) p /= total;
    return out;
}

NetGradients net_gradients(const PredictiveNet& net, std::span<const double> x, std::size_t target) {
    if (target >= net.outputs()) throw ContractError("net_gradients: target out of range");
    const auto fwd = net_forward(net, x);
    const std::size_t H = net.hidden_dim();
    const std::size_t O = net.outputs();

    NetGradients g;
    g.loss = -std::log(fwd.probabilities[target]);
    g.b2 = fwd.probabilities;
    g.b2[target] -= 1.0;  // d loss / d logits

    g.w2 = Matrix(H, O);
    std::vector<double> dz(H, 0.0);
    for (std::size_t j = 0; j < H; ++j) {
        const auto w = net.w2.row(j);
        double back = 0.0;
        for (std::size_t k = 0; k < O; ++k) {
            g.w2(j, k) = fwd.hidden[j] * g.b2[k];
            back += w[k] * g.b2[k];
        }
        dz[j] = back * fwd.hidden[j] * (1.0 - fwd.hidden[j]);
    }
    g.b1 = dz;
    g.w1 = Matrix(net.inputs(), H);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < H; ++j) g.w1(i, j) = x[i] * dz[j];
    }
    return g;
}

double net_train_step(PredictiveNet& net, std::span<const double> x, std::size_t target, double lr) {
    const auto g = net_gradients(net, x, target);
    if (!std::isfinite(g.loss)) throw TrainingError("predictive net loss is not finite; lower the learning rate");
    if (lr == 0.0) return g.loss;
    auto descend = [lr](std::vector<double>& p, const std::vector<double>& d) {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * d[i];
    };
    descend(net.w1.data(), g.w1.data());
    descend(net.b1, g.b1);
    descend(net.w2.data(), g.w2.data());
    descend(net.b2, g.b2);
    return g.loss;
}

}  // namespace neuronav
