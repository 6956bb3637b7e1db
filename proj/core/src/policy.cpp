#include "neuronav/policy.hpp"

#include <cmath>
#include <limits>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

bool is_available(std::span<const char> available, std::size_t a) {
    return available.empty() || available[a] != 0;
}

void require_any(std::span<const double> values, std::span<const char> available) {
    if (!available.empty() && available.size() != values.size()) {
        throw PolicyError("action mask size does not match value vector");
    }
    for (std::size_t a = 0; a < values.size(); ++a)
        if (is_available(available, a)) return;
    throw PolicyError("no available actions");
}

}  // namespace

std::vector<double> softmax_policy(std::span<const double> values, double beta,
                                   std::span<const char> available) {
    require_any(values, available);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < values.size(); ++a)
        if (is_available(available, a)) max_logit = std::max(max_logit, beta * values[a]);

    std::vector<double> p(values.size(), 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (!is_available(available, a)) continue;
        p[a] = std::exp(beta * values[a] - max_logit);
        total += p[a];
    }
    for (auto& x : p) x /= total;
    return p;
}

Action greedy_action(std::span<const double> values, std::span<const char> available) {
    require_any(values, available);
    Action best = values.size();
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (!is_available(available, a)) continue;
        if (best == values.size() || values[a] > values[best]) best = a;
    }
    return best;
}

Action epsilon_greedy(std::span<const double> values, double epsilon, std::span<const char> available,
                      Rng& rng) {
    const Action greedy = greedy_action(values, available);
    if (rng.uniform() >= epsilon) return greedy;
    std::size_t count = 0;
    for (std::size_t a = 0; a < values.size(); ++a) count += is_available(available, a) ? 1 : 0;
    std::size_t pick = rng.uniform_index(count);
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (!is_available(available, a)) continue;
        if (pick-- == 0) return a;
    }
    return greedy;
}

Action sample_action(std::span<const double> probs, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    Action last = 0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
        if (probs[a] <= 0.0) continue;
        acc += probs[a];
        last = a;
        if (u < acc) return a;
    }
    return last;
}

}  // namespace neuronav
