#include "neuronav/maze.hpp"

#include <deque>
#include <map>

#include "neuronav/error.hpp"
#include "neuronav/graph.hpp"

namespace neuronav {

Cell neighbor(Cell c, Direction d) noexcept {
    switch (d) {
        case Direction::North: return {c.x, c.y - 1};
        case Direction::East: return {c.x + 1, c.y};
        case Direction::South: return {c.x, c.y + 1};
        case Direction::West: return {c.x - 1, c.y};
    }
    return c;
}

MazeSpec parse_ascii_maze(std::string_view text, double goal_reward) {
    std::vector<std::string_view> rows;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) rows.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    if (rows.empty()) throw ValidationError("maze: empty layout");

    MazeSpec maze;
    maze.width = static_cast<int>(rows.front().size());
    maze.height = static_cast<int>(rows.size());
    maze.goal_reward = goal_reward;
    bool have_start = false;
    bool have_goal = false;
    for (int y = 0; y < maze.height; ++y) {
        const auto row = rows[static_cast<std::size_t>(y)];
        if (static_cast<int>(row.size()) != maze.width) {
            throw ValidationError("maze: row " + std::to_string(y) + " has width " +
                                  std::to_string(row.size()) + ", expected " +
                                  std::to_string(maze.width));
        }
        for (int x = 0; x < maze.width; ++x) {
            switch (row[static_cast<std::size_t>(x)]) {
                case '#': maze.walls.insert({x, y}); break;
                case '.': break;
                case 'S':
                    if (have_start) throw ValidationError("maze: more than one 'S'");
                    maze.start = {x, y};
                    have_start = true;
                    break;
                case 'G':
                    if (have_goal) throw ValidationError("maze: more than one 'G'");
                    maze.goal = {x, y};
                    have_goal = true;
                    break;
                default:
                    throw ValidationError(std::string("maze: unexpected character '") +
                                          row[static_cast<std::size_t>(x)] + "' at row " +
                                          std::to_string(y));
            }
        }
    }
    if (!have_start) throw ValidationError("maze: missing 'S'");
    if (!have_goal) throw ValidationError("maze: missing 'G'");
    return maze;
}

std::string to_ascii(const MazeSpec& maze) {
    std::string out;
    for (int y = 0; y < maze.height; ++y) {
        for (int x = 0; x < maze.width; ++x) {
            const Cell c{x, y};
            if (c == maze.start) out += 'S';
            else if (c == maze.goal) out += 'G';
            else if (maze.walls.contains(c)) out += '#';
            else out += '.';
        }
        out += '\n';
    }
    return out;
}

std::vector<Cell> free_cells(const MazeSpec& maze) {
    std::vector<Cell> cells;
    for (int y = 0; y < maze.height; ++y)
        for (int x = 0; x < maze.width; ++x)
            if (!maze.walls.contains({x, y})) cells.push_back({x, y});
    return cells;
}

GraphSpec compile_maze(const MazeSpec& maze) { return compile_maze(maze, maze.goal_reward); }

GraphSpec compile_maze(const MazeSpec& maze, double goal_reward) {
    if (maze.width <= 0 || maze.height <= 0) throw ValidationError("maze: non-positive size");
    if (!maze.is_free(maze.start)) throw ValidationError("maze: start is not a free in-bounds cell");
    if (!maze.is_free(maze.goal)) throw ValidationError("maze: goal is not a free in-bounds cell");
    if (maze.start == maze.goal) throw ValidationError("maze: start and goal coincide");

    const auto cells = free_cells(maze);
    std::map<Cell, State> index;
    for (State s = 0; s < cells.size(); ++s) index.emplace(cells[s], s);

    GraphSpec g;
    g.n_states = cells.size();
    g.n_actions = kMazeActions;
    g.successors.resize(g.n_states * g.n_actions);
    g.rewards.assign(g.n_states, 0.0);
    for (State s = 0; s < g.n_states; ++s) {
        for (Action a = 0; a < kMazeActions; ++a) {
            const Cell target = neighbor(cells[s], static_cast<Direction>(a));
            const State next = maze.is_free(target) ? index.at(target) : s;
            g.successors_of(s, a) = {Successor{next, 1.0}};
        }
    }
    const State goal = index.at(maze.goal);
    const State start = index.at(maze.start);
    g.rewards[goal] = goal_reward;
    g.terminals = {goal};
    g.start_states = {start};

    // Start/goal connectivity by BFS over the cell grid.
    std::vector<char> seen(g.n_states, 0);
    std::deque<State> frontier{start};
    seen[start] = 1;
    while (!frontier.empty()) {
        const State s = frontier.front();
        frontier.pop_front();
        for (Action a = 0; a < kMazeActions; ++a) {
            const State next = g.successors_of(s, a).front().state;
            if (!seen[next]) {
                seen[next] = 1;
                frontier.push_back(next);
            }
        }
    }
    if (!seen[goal]) throw ValidationError("maze: goal is unreachable from start");

    MazeSpec stored = maze;
    stored.goal_reward = goal_reward;
    g.maze = MazeProvenance{std::move(stored), cells};
    return g;
}

GraphSpec grid_indexed(const GraphSpec& compiled) {
    if (!compiled.maze) throw ContractError("grid_indexed: spec has no maze provenance");
    const auto& prov = *compiled.maze;
    const auto width = static_cast<std::size_t>(prov.maze.width);
    auto to_grid = [&](State s) {
        const Cell c = prov.cells.at(s);
        return static_cast<std::size_t>(c.y) * width + static_cast<std::size_t>(c.x);
    };
    GraphSpec g;
    g.n_states = width * static_cast<std::size_t>(prov.maze.height);
    g.n_actions = compiled.n_actions;
    g.successors.resize(g.n_states * g.n_actions);
    g.rewards.assign(g.n_states, 0.0);
    for (State s = 0; s < compiled.n_states; ++s) {
        const State gs = to_grid(s);
        g.rewards[gs] = compiled.reward(s);
        for (Action a = 0; a < compiled.n_actions; ++a) {
            auto& out = g.successors_of(gs, a);
            for (const auto& succ : compiled.successors_of(s, a)) out.push_back({to_grid(succ.state), succ.probability});
        }
    }
    for (State t : compiled.terminals) g.terminals.insert(to_grid(t));
    for (State s : compiled.start_states) g.start_states.push_back(to_grid(s));
    return g;
}

}  // namespace neuronav
