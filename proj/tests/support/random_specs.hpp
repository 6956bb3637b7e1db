#pragma once

// Small random graphs for property tests.

#include <algorithm>
#include <vector>

#include "neuronav/graph.hpp"
#include "neuronav/rng.hpp"

namespace oracle {

// n_states states, n_actions actions all available outside terminals.
// Successor probabilities are multiples of 1/4 so an agent fed four
// samples per pair holds the exact model. The last state is terminal and
// reachable from state 0.
inline neuronav::GraphSpec random_small_spec(neuronav::Rng& rng, std::size_t n_states, std::size_t n_actions,
                                             bool stochastic) {
    using namespace neuronav;
    GraphSpec g;
    g.n_states = n_states;
    g.n_actions = n_actions;
    g.successors.resize(n_states * n_actions);
    const State goal = n_states - 1;
    g.terminals = {goal};
    if (n_states > 3 && rng.uniform() < 0.5) g.terminals.insert(n_states - 2);
    g.rewards.assign(n_states, 0.0);
    for (State s = 0; s < n_states; ++s) g.rewards[s] = static_cast<double>(rng.uniform_index(7)) - 2.0;
    g.rewards[goal] = 10.0;
    g.start_states = {0};
    for (State s = 0; s < n_states; ++s) {
        if (g.is_terminal(s)) continue;
        for (Action a = 0; a < n_actions; ++a) {
            auto& succ = g.successors_of(s, a);
            if (!stochastic || rng.uniform() < 0.5) {
                succ = {{rng.uniform_index(n_states), 1.0}};
                continue;
            }
            State x = rng.uniform_index(n_states), y = rng.uniform_index(n_states);
            while (y == x) y = rng.uniform_index(n_states);
            const double p = rng.uniform() < 0.5 ? 0.25 : 0.5;
            succ = {{x, p}, {y, 1.0 - p}};
        }
    }
    // guarantee a path 0 -> 1 -> ... -> goal through action 0
    for (State s = 0; s + 1 < n_states; ++s)
        if (!g.is_terminal(s)) g.successors_of(s, 0) = {{s + 1, 1.0}};
    return g;
}

}  // namespace oracle
