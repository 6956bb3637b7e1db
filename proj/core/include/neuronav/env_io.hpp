#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "neuronav/graph.hpp"

namespace neuronav {

// Environment definition documents (see docs/environment-format.md).
//
//   {"type": "maze", "goal_reward": 10, "layout": ["#####", "#S.G#", "#####"]}
//   {"type": "graph", "n_states": 2, "n_actions": 1,
//    "successors": [[[[1, 1.0]]], [[]]], "rewards": [0, 1],
//    "terminals": [1], "start_states": [0]}
//
// Parsing validates the result; malformed input throws ValidationError.
GraphSpec parse_environment(std::string_view text);
GraphSpec load_environment(const std::filesystem::path& path);

// Maze-backed specs are written as mazes, everything else as graphs.
std::string export_environment(const GraphSpec& spec);

}  // namespace neuronav
