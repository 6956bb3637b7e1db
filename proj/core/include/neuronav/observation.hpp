#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "neuronav/graph.hpp"

namespace neuronav {

struct OneHot {};

// Distance in cells to the nearest wall or boundary along N, E, S, W rays.
// Only defined for maze-compiled graphs.
struct WallDistance {};

// Deterministic unit-norm pseudo-random vector keyed by (state, seed);
// stands in for image observations on graph tasks.
struct SyntheticFeature {
    std::size_t dim = 16;
    std::uint64_t seed = 0;
};

using ObservationEncoding = std::variant<OneHot, WallDistance, SyntheticFeature>;

// Observations never feed back into dynamics; they are a pure view of the state.
std::vector<double> observe(const GraphSpec& spec, State s, const ObservationEncoding& enc);

std::size_t observation_size(const GraphSpec& spec, const ObservationEncoding& enc);

}  // namespace neuronav
