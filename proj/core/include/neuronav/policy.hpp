#pragma once

#include <span>
#include <vector>

#include "neuronav/graph.hpp"
#include "neuronav/rng.hpp"

namespace neuronav {

enum class PolicyKind { Softmax, EpsilonGreedy };

// p(a) proportional to exp(beta * values[a]) over available actions, zero
// elsewhere. `available` may be empty, meaning every action is available.
// Throws PolicyError when every action is masked.
std::vector<double> softmax_policy(std::span<const double> values, double beta,
                                   std::span<const char> available = {});

// Greedy with probability 1 - epsilon (ties to the lowest index), otherwise
// uniform over available actions. Always consumes one draw for the coin.
Action epsilon_greedy(std::span<const double> values, double epsilon, std::span<const char> available,
                      Rng& rng);

// Lowest-index argmax over available actions.
Action greedy_action(std::span<const double> values, std::span<const char> available = {});

// Inverse-CDF sample from a probability vector.
Action sample_action(std::span<const double> probs, Rng& rng);

}  // namespace neuronav
