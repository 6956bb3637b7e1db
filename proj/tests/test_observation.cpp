#include <doctest.h>

#include <cmath>

#include "neuronav/error.hpp"
#include "neuronav/maze.hpp"
#include "neuronav/observation.hpp"
#include "neuronav/presets.hpp"

using namespace neuronav;

TEST_SUITE("observation") {
    TEST_CASE("one-hot") {
        const auto g = revaluation_graph();
        for (State s = 0; s < g.n_states; ++s) {
            const auto v = observe(g, s, OneHot{});
            REQUIRE(v.size() == g.n_states);
            for (State j = 0; j < g.n_states; ++j) CHECK(v[j] == (j == s ? 1.0 : 0.0));
        }
        CHECK(observation_size(g, OneHot{}) == 5);
        CHECK_THROWS_AS(observe(g, 5, OneHot{}), ContractError);
    }

    TEST_CASE("wall distance in an enclosed cell") {
        // Free cell surrounded by walls on all four sides, plus a separate
        // start/goal corridor to keep the maze legal.
        const auto m = parse_ascii_maze(
            "###.\n"
            "#.#.\n"
            "###.\n"
            "S..G\n");
        MazeSpec maze = m;
        const auto g = compile_maze(maze);
        const auto cells = free_cells(maze);
        State enclosed = 0;
        for (State s = 0; s < cells.size(); ++s)
            if (cells[s] == Cell{1, 1}) enclosed = s;
        CHECK(observe(g, enclosed, WallDistance{}) == std::vector<double>{1, 1, 1, 1});
    }

    TEST_CASE("wall distance in an open room, hand ray cast") {
        const auto g = compile_maze(open_field_maze(5));
        // centre (2, 2) is state 12
        CHECK(observe(g, 12, WallDistance{}) == std::vector<double>{3, 3, 3, 3});
        // corner (0, 0): boundary right next to N and W, four free cells E and S
        CHECK(observe(g, 0, WallDistance{}) == std::vector<double>{1, 5, 5, 1});
        // (1, 3): N 4, E 4, S 2, W 2
        CHECK(observe(g, 3 * 5 + 1, WallDistance{}) == std::vector<double>{4, 4, 2, 2});
        CHECK(observation_size(g, WallDistance{}) == 4);
    }

    TEST_CASE("wall distance needs a maze") {
        const auto g = revaluation_graph();
        CHECK_THROWS_AS(observe(g, 0, WallDistance{}), EncodingError);
        CHECK_THROWS_AS(observation_size(g, WallDistance{}), EncodingError);
    }

    TEST_CASE("synthetic features are deterministic unit vectors") {
        const auto g = community_graph();
        const SyntheticFeature f{24, 99};
        for (State s = 0; s < g.n_states; ++s) {
            const auto v = observe(g, s, f);
            REQUIRE(v.size() == 24);
            double n2 = 0.0;
            for (double x : v) n2 += x * x;
            CHECK(std::sqrt(n2) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(v == observe(g, s, f));
        }
        CHECK(observe(g, 0, f) != observe(g, 1, f));
        CHECK(observe(g, 0, f) != observe(g, 0, SyntheticFeature{24, 100}));
        CHECK_THROWS_AS(observe(g, 0, SyntheticFeature{0, 1}), EncodingError);
    }
}
