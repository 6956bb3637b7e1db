#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "neuronav/graph.hpp"

namespace neuronav {

// Edits. Maze-level edits (MoveGoal, ToggleWall) recompile from the maze
// source; graph-level edits drop maze provenance.
struct MoveGoal {
    Cell cell;
};
struct ToggleWall {
    Cell cell;
};
struct SwapRewards {
    State first = 0;
    State second = 0;
};
struct RewireAction {
    State state = 0;
    Action action = 0;
    State next = 0;
};

using EnvironmentEdit = std::variant<MoveGoal, ToggleWall, SwapRewards, RewireAction>;

// Returns a new validated spec; throws EditError when the result is invalid.
GraphSpec apply_edit(const GraphSpec& spec, const EnvironmentEdit& edit);
GraphSpec apply_edits(const GraphSpec& spec, std::span<const EnvironmentEdit> edits);

std::string describe(const EnvironmentEdit& edit);

struct PresetMetadata {
    std::string citation;
    std::string description;
    std::optional<std::vector<int>> community_labels;  // [state] -> community id
    std::vector<EnvironmentEdit> scripted_edits;       // applied mid-run by transfer protocols
};

struct Preset {
    std::string name;
    GraphSpec spec;
    PresetMetadata metadata;
};

// Sorted, stable names.
std::vector<std::string> preset_names();

// Deep validated copy; unknown names throw CatalogError listing the catalog.
Preset load_preset(std::string_view name);

// Parameterised builders behind the catalog entries.
MazeSpec open_field_maze(int size = 10, double goal_reward = 10.0);
MazeSpec linear_track_maze(int length = 8, double goal_reward = 10.0);
GraphSpec revaluation_graph(double high_reward = 10.0, double low_reward = 1.0);
// communities x community_size nodes; every node has degree community_size - 1.
GraphSpec community_graph(int communities = 3, int community_size = 5);
std::vector<int> community_labels(int communities = 3, int community_size = 5);

// Named states of the revaluation graph.
namespace revaluation {
inline constexpr State start = 0;
inline constexpr State left = 1;
inline constexpr State right = 2;
inline constexpr State high_terminal = 3;  // reached via `left`
inline constexpr State low_terminal = 4;   // reached via `right`
inline constexpr Action go_left = 0;
inline constexpr Action go_right = 1;
inline constexpr Action proceed = 0;
}  // namespace revaluation

}  // namespace neuronav
