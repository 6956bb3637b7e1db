#include <doctest.h>

#include "neuronav/error.hpp"
#include "neuronav/graph.hpp"
#include "neuronav/maze.hpp"
#include "neuronav/rng.hpp"
#include "support/oracles.hpp"

using namespace neuronav;

namespace {

constexpr Action N = 0, E = 1, S = 2, W = 3;

State only_successor(const GraphSpec& g, State s, Action a) {
    const auto& succ = g.successors_of(s, a);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].probability == 1.0);
    return succ[0].state;
}

}  // namespace

TEST_SUITE("maze") {
    TEST_CASE("smallest legal maze") {
        MazeSpec m;
        m.width = 2;
        m.height = 1;
        m.start = {0, 0};
        m.goal = {1, 0};
        const auto g = compile_maze(m, 7.0);
        CHECK(g.n_states == 2);
        CHECK(g.n_actions == 4);
        CHECK(only_successor(g, 0, E) == 1);
        CHECK(only_successor(g, 0, N) == 0);
        CHECK(only_successor(g, 0, S) == 0);
        CHECK(only_successor(g, 0, W) == 0);
        CHECK(g.is_terminal(1));
        CHECK(g.reward(1) == 7.0);
        CHECK(g.start_states == std::vector<State>{0});
        CHECK(validate(g).empty());
    }

    TEST_CASE("degenerate mazes are rejected") {
        MazeSpec m;
        m.width = 1;
        m.height = 1;
        m.start = m.goal = {0, 0};
        CHECK_THROWS_AS(compile_maze(m), ValidationError);

        MazeSpec walled;
        walled.width = 3;
        walled.height = 1;
        walled.start = {0, 0};
        walled.goal = {2, 0};
        walled.walls = {{1, 0}};
        CHECK_THROWS_AS(compile_maze(walled), ValidationError);

        walled.walls = {{2, 0}};
        CHECK_THROWS_AS(compile_maze(walled), ValidationError);
    }

    TEST_CASE("central wall row with one opening") {
        MazeSpec m;
        m.width = 11;
        m.height = 11;
        for (int x = 0; x < 11; ++x)
            if (x != 4) m.walls.insert({x, 5});
        m.start = {0, 0};
        m.goal = {10, 10};
        const auto g = compile_maze(m);
        CHECK(g.n_states == 121 - m.walls.size());
        const auto reachable = oracle::flood_fill(m, m.start);
        CHECK(reachable.size() == g.n_states);
        const auto from_start = reachable_from(g, 0);
        for (char c : from_start) CHECK(c);
    }

    TEST_CASE("ascii round trip") {
        const std::string text = "S..#\n.#..\n...G\n";
        const auto m = parse_ascii_maze(text, 3.0);
        CHECK(m.width == 4);
        CHECK(m.height == 3);
        CHECK(m.start == Cell{0, 0});
        CHECK(m.goal == Cell{3, 2});
        CHECK(m.walls.size() == 2);
        CHECK(to_ascii(m) == text);
        CHECK_THROWS_AS(parse_ascii_maze("S..\n..\n..G"), ValidationError);
        CHECK_THROWS_AS(parse_ascii_maze("S.x\n..G"), ValidationError);
    }

    TEST_CASE("random mazes: state count, wall symmetry, connectivity") {
        Rng rng(2024);
        int compiled = 0;
        for (int trial = 0; trial < 200; ++trial) {
            MazeSpec m;
            m.width = 2 + static_cast<int>(rng.uniform_index(8));
            m.height = 1 + static_cast<int>(rng.uniform_index(8));
            for (int y = 0; y < m.height; ++y)
                for (int x = 0; x < m.width; ++x)
                    if (rng.uniform() < 0.3) m.walls.insert({x, y});
            m.start = {0, 0};
            m.goal = {m.width - 1, m.height - 1};
            m.walls.erase(m.start);
            m.walls.erase(m.goal);

            const auto reachable = oracle::flood_fill(m, m.start);
            if (!reachable.contains(m.goal)) {
                CHECK_THROWS_AS(compile_maze(m), ValidationError);
                continue;
            }
            const auto g = compile_maze(m);
            ++compiled;
            const auto cells = free_cells(m);
            CHECK(g.n_states == cells.size());
            CHECK(g.n_states == static_cast<std::size_t>(m.width * m.height) - m.walls.size());
            for (State u = 0; u < g.n_states; ++u) {
                for (Action a = 0; a < 4; ++a) {
                    const State v = only_successor(g, u, a);
                    if (v == u) continue;
                    const Action back = (a + 2) % 4;
                    CHECK(only_successor(g, v, back) == u);
                }
            }
        }
        CHECK(compiled > 50);
    }

    TEST_CASE("grid indexing keeps cells fixed across wall edits") {
        const auto m = parse_ascii_maze("S.#\n...\n..G", 1.0);
        const auto g = compile_maze(m);
        const auto grid = grid_indexed(g);
        CHECK(grid.n_states == 9);
        CHECK(validate(grid).empty());
        // Wall cell (2, 0) is state 2 and has no actions.
        for (Action a = 0; a < 4; ++a) CHECK_FALSE(grid.available(2, a));
        CHECK(grid.is_terminal(8));
        CHECK(grid.reward(8) == 1.0);
        CHECK(grid.start_states == std::vector<State>{0});
        CHECK(only_successor(grid, 1, E) == 1);  // bump into the wall
        CHECK(only_successor(grid, 1, S) == 4);
        CHECK_THROWS_AS(grid_indexed(grid), ContractError);
    }
}
