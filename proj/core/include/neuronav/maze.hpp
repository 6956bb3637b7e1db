#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace neuronav {

struct Cell {
    int x = 0;
    int y = 0;  // row index, 0 at the top of the ASCII layout

    auto operator<=>(const Cell&) const = default;
};

// Four cardinal moves, in action-index order.
enum class Direction : std::size_t { North = 0, East = 1, South = 2, West = 3 };
inline constexpr std::size_t kMazeActions = 4;

Cell neighbor(Cell c, Direction d) noexcept;

struct MazeSpec {
    int width = 0;
    int height = 0;
    std::set<Cell> walls;
    Cell start;
    Cell goal;
    double goal_reward = 1.0;

    bool in_bounds(Cell c) const noexcept {
        return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;
    }
    bool is_free(Cell c) const noexcept { return in_bounds(c) && !walls.contains(c); }

    bool operator==(const MazeSpec&) const = default;
};

// '#' wall, '.' free, 'S' start, 'G' goal. Rows may not be ragged.
MazeSpec parse_ascii_maze(std::string_view text, double goal_reward = 1.0);
std::string to_ascii(const MazeSpec& maze);

// Free cells in row-major order; state i of a compiled maze is cells[i].
std::vector<Cell> free_cells(const MazeSpec& maze);

struct GraphSpec;

// One state per free cell, actions N/E/S/W, wall and boundary bumps are
// self-loops, goal is the only terminal. Throws ValidationError if the
// maze is malformed or start and goal are disconnected.
GraphSpec compile_maze(const MazeSpec& maze);
GraphSpec compile_maze(const MazeSpec& maze, double goal_reward);

// Re-indexes a compiled maze so state y * width + x is cell (x, y) whether
// or not the cell is free. Wall cells become isolated states with no
// available actions. Indices then survive wall edits, which is what an agent
// carried across a structural change needs. The result has no maze
// provenance. Throws ContractError if `compiled` has none.
GraphSpec grid_indexed(const GraphSpec& compiled);

}  // namespace neuronav
