#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "neuronav/maze.hpp"
#include "neuronav/rng.hpp"

namespace neuronav {

using State = std::size_t;
using Action = std::size_t;

struct Successor {
    State state = 0;
    double probability = 1.0;

    bool operator==(const Successor&) const = default;
};

// Present when a graph was compiled from a maze; cells[s] is state s's cell.
struct MazeProvenance {
    MazeSpec maze;
    std::vector<Cell> cells;

    bool operator==(const MazeProvenance&) const = default;
};

// Immutable environment definition. An empty successor list marks an
// unavailable action. Rewards are received on entering a state.
struct GraphSpec {
    std::size_t n_states = 0;
    std::size_t n_actions = 0;
    std::vector<std::vector<Successor>> successors;  // [s * n_actions + a]
    std::vector<double> rewards;                     // [s]
    std::set<State> terminals;
    std::vector<State> start_states;
    std::optional<MazeProvenance> maze;

    const std::vector<Successor>& successors_of(State s, Action a) const {
        return successors[s * n_actions + a];
    }
    std::vector<Successor>& successors_of(State s, Action a) {
        return successors[s * n_actions + a];
    }
    double reward(State s) const { return s < rewards.size() ? rewards[s] : 0.0; }
    bool is_terminal(State s) const { return terminals.contains(s); }
    bool available(State s, Action a) const { return !successors_of(s, a).empty(); }

    bool operator==(const GraphSpec&) const = default;
};

struct Transition {
    State s = 0;
    Action a = 0;
    double r = 0.0;
    State s_next = 0;
    bool done = false;

    bool operator==(const Transition&) const = default;
};

// Empty when valid. Checks every invariant and reports all violations,
// including start states from which no terminal is reachable.
std::vector<std::string> validate(const GraphSpec& spec);

// Throws ValidationError joining all violations.
void require_valid(const GraphSpec& spec);

State reset(const GraphSpec& spec, Rng& rng);

// Throws ContractError when s is terminal, a is out of range or unavailable.
Transition step(const GraphSpec& spec, State s, Action a, Rng& rng);

// Row-major S x A availability table.
std::vector<char> action_mask(const GraphSpec& spec);

// States reachable from `from` following any available action.
std::vector<char> reachable_from(const GraphSpec& spec, State from);

// Stable 64-bit FNV-1a digest over the canonical content of a spec.
std::uint64_t spec_hash(const GraphSpec& spec);

}  // namespace neuronav
