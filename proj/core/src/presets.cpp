#include "neuronav/presets.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const MazeSpec& maze_source(const GraphSpec& spec, const char* edit) {
    if (!spec.maze) throw EditError(std::string(edit) + " requires a maze-compiled spec");
    return spec.maze->maze;
}

GraphSpec recompile(const MazeSpec& maze) {
    try {
        return compile_maze(maze);
    } catch (const ValidationError& e) {
        throw EditError(std::string("edit produces an invalid maze: ") + e.what());
    }
}

}  // namespace

GraphSpec apply_edit(const GraphSpec& spec, const EnvironmentEdit& edit) {
    GraphSpec out = std::visit(
        overloaded{
            [&](const MoveGoal& e) {
                MazeSpec maze = maze_source(spec, "MoveGoal");
                if (!maze.is_free(e.cell)) throw EditError("MoveGoal: target cell is not free");
                if (e.cell == maze.start) throw EditError("MoveGoal: target cell is the start");
                maze.goal = e.cell;
                return recompile(maze);
            },
            [&](const ToggleWall& e) {
                MazeSpec maze = maze_source(spec, "ToggleWall");
                if (!maze.in_bounds(e.cell)) throw EditError("ToggleWall: cell out of bounds");
                if (e.cell == maze.start || e.cell == maze.goal) {
                    throw EditError("ToggleWall: cannot wall the start or goal");
                }
                if (!maze.walls.erase(e.cell)) maze.walls.insert(e.cell);
                return recompile(maze);
            },
            [&](const SwapRewards& e) {
                if (e.first >= spec.n_states || e.second >= spec.n_states) {
                    throw EditError("SwapRewards: state out of range");
                }
                GraphSpec g = spec;
                g.maze.reset();
                std::swap(g.rewards[e.first], g.rewards[e.second]);
                return g;
            },
            [&](const RewireAction& e) {
                if (e.state >= spec.n_states || e.next >= spec.n_states || e.action >= spec.n_actions) {
                    throw EditError("RewireAction: index out of range");
                }
                GraphSpec g = spec;
                g.maze.reset();
                g.successors_of(e.state, e.action) = {Successor{e.next, 1.0}};
                return g;
            },
        },
        edit);
    const auto violations = validate(out);
    if (!violations.empty()) throw EditError("edit " + describe(edit) + " invalidates spec: " + violations.front());
    return out;
}

GraphSpec apply_edits(const GraphSpec& spec, std::span<const EnvironmentEdit> edits) {
    GraphSpec out = spec;
    for (const auto& e : edits) out = apply_edit(out, e);
    return out;
}

std::string describe(const EnvironmentEdit& edit) {
    auto cell = [](Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; };
    return std::visit(
        overloaded{
            [&](const MoveGoal& e) { return "MoveGoal" + cell(e.cell); },
            [&](const ToggleWall& e) { return "ToggleWall" + cell(e.cell); },
            [](const SwapRewards& e) {
                return "SwapRewards(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
            },
            [](const RewireAction& e) {
                return "RewireAction(" + std::to_string(e.state) + "," + std::to_string(e.action) + "," +
                       std::to_string(e.next) + ")";
            },
        },
        edit);
}

MazeSpec open_field_maze(int size, double goal_reward) {
    MazeSpec m;
    m.width = size;
    m.height = size;
    m.start = {0, 0};
    m.goal = {size - 1, size - 1};
    m.goal_reward = goal_reward;
    return m;
}

MazeSpec linear_track_maze(int length, double goal_reward) {
    MazeSpec m;
    m.width = length;
    m.height = 1;
    m.start = {0, 0};
    m.goal = {length - 1, 0};
    m.goal_reward = goal_reward;
    return m;
}

GraphSpec revaluation_graph(double high_reward, double low_reward) {
    using namespace revaluation;
    GraphSpec g;
    g.n_states = 5;
    g.n_actions = 2;
    g.successors.resize(g.n_states * g.n_actions);
    g.successors_of(start, go_left) = {{left, 1.0}};
    g.successors_of(start, go_right) = {{right, 1.0}};
    g.successors_of(left, proceed) = {{high_terminal, 1.0}};
    g.successors_of(right, proceed) = {{low_terminal, 1.0}};
    g.rewards = {0.0, 0.0, 0.0, high_reward, low_reward};
    g.terminals = {high_terminal, low_terminal};
    g.start_states = {start};
    return g;
}

std::vector<int> community_labels(int communities, int community_size) {
    std::vector<int> labels;
    for (int c = 0; c < communities; ++c)
        for (int i = 0; i < community_size; ++i) labels.push_back(c);
    return labels;
}

GraphSpec community_graph(int communities, int community_size) {
    // Ring of cliques: each community is a clique minus the edge between its
    // two boundary nodes, which instead link to the neighbouring communities.
    const auto k = static_cast<std::size_t>(community_size);
    const auto n = static_cast<std::size_t>(communities) * k;
    std::vector<std::vector<State>> adj(n);
    auto link = [&](State u, State v) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    };
    for (std::size_t c = 0; c < static_cast<std::size_t>(communities); ++c) {
        const State first = c * k;
        const State last = first + k - 1;
        for (State u = first; u <= last; ++u)
            for (State v = u + 1; v <= last; ++v)
                if (!(u == first && v == last)) link(u, v);
        link(last, (first + k) % n);
    }
    GraphSpec g;
    g.n_states = n;
    g.n_actions = k - 1;
    g.successors.resize(n * g.n_actions);
    for (State s = 0; s < n; ++s) {
        std::sort(adj[s].begin(), adj[s].end());
        for (Action a = 0; a < adj[s].size() && a < g.n_actions; ++a) {
            g.successors_of(s, a) = {{adj[s][a], 1.0}};
        }
    }
    // An interior node of the last community is the goal, so the graph is
    // also usable episodically.
    const State goal = n - k + k / 2;
    g.rewards.assign(n, 0.0);
    g.rewards[goal] = 1.0;
    g.terminals = {goal};
    for (State s = 0; s < n; ++s)
        if (s != goal) g.start_states.push_back(s);
    return g;
}

namespace {

// Dividing wall at x = 5 with openings given by `gaps`.
MazeSpec divided_maze(std::initializer_list<int> gaps, Cell start, Cell goal) {
    MazeSpec m;
    m.width = 10;
    m.height = 10;
    m.start = start;
    m.goal = goal;
    m.goal_reward = 10.0;
    for (int y = 0; y < m.height; ++y) {
        if (std::find(gaps.begin(), gaps.end(), y) == gaps.end()) m.walls.insert({5, y});
    }
    return m;
}

using Builder = std::function<Preset()>;

const std::map<std::string, Builder, std::less<>>& catalog() {
    static const std::map<std::string, Builder, std::less<>> entries = {
        {"community_graph",
         [] {
             return Preset{"community_graph", community_graph(),
                           {"Schapiro et al. 2013, temporal community structure",
                            "15 nodes in three communities of five; every node has degree 4",
                            community_labels(),
                            {}}};
         }},
        {"linear_track",
         [] {
             return Preset{"linear_track", compile_maze(linear_track_maze()),
                           {"Sutton & Barto 2018, chain walk", "1 x 8 corridor, goal at the far end", {}, {}}};
         }},
        {"open_field",
         [] {
             return Preset{"open_field", compile_maze(open_field_maze()),
                           {"Stachenfeld et al. 2017, open arena",
                            "10 x 10 room without interior walls",
                            {},
                            {}}};
         }},
        {"revaluation_graph",
         [] {
             return Preset{"revaluation_graph", revaluation_graph(),
                           {"Momennejad et al. 2017, Experiment 1",
                            "start s0 chooses s1 or s2; s1 leads to s3 (r=10), s2 to s4 (r=1)",
                            {},
                            {}}};
         }},
        {"transfer_maze_reward",
         [] {
             const MazeSpec m = divided_maze({4}, {0, 9}, {9, 0});
             return Preset{"transfer_maze_reward", compile_maze(m),
                           {"Russek et al. 2017, reward revaluation",
                            "10 x 10 maze with a dividing wall; the goal moves mid-run",
                            {},
                            {MoveGoal{{0, 0}}}}};
         }},
        {"transfer_maze_structure",
         [] {
             const MazeSpec m = divided_maze({1}, {1, 4}, {8, 4});
             return Preset{"transfer_maze_structure", compile_maze(m),
                           {"Russek et al. 2017, detour",
                            "10 x 10 maze with a dividing wall; the opening moves mid-run",
                            {},
                            {ToggleWall{{5, 8}}, ToggleWall{{5, 1}}}}};
         }},
    };
    return entries;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : catalog()) names.push_back(name);
    return names;
}

Preset load_preset(std::string_view name) {
    const auto& entries = catalog();
    const auto it = entries.find(name);
    if (it == entries.end()) {
        std::string msg = "unknown preset '" + std::string(name) + "'; available:";
        for (const auto& [n, _] : entries) msg += " " + n;
        throw CatalogError(msg);
    }
    Preset p = it->second();
    require_valid(p.spec);
    return p;
}

}  // namespace neuronav
