#include <doctest.h>

#include <algorithm>

#include "neuronav/error.hpp"
#include "neuronav/presets.hpp"
#include "support/oracles.hpp"

using namespace neuronav;

TEST_SUITE("presets") {
    TEST_CASE("catalog names are sorted and every preset validates") {
        const auto names = preset_names();
        CHECK(std::is_sorted(names.begin(), names.end()));
        CHECK(names.size() == 6);
        for (const auto& name : names) {
            CAPTURE(name);
            const auto p = load_preset(name);
            CHECK(p.name == name);
            CHECK(validate(p.spec).empty());
            CHECK_FALSE(p.metadata.citation.empty());
            CHECK_FALSE(p.metadata.description.empty());
        }
    }

    TEST_CASE("unknown preset lists the catalog") {
        try {
            load_preset("nope");
            FAIL("expected CatalogError");
        } catch (const CatalogError& e) {
            const std::string msg = e.what();
            for (const auto& name : preset_names()) CHECK(msg.find(name) != std::string::npos);
        }
    }

    TEST_CASE("loads are independent copies") {
        auto a = load_preset("open_field");
        a.spec.rewards[0] = 123.0;
        CHECK(load_preset("open_field").spec.rewards[0] == 0.0);
    }

    TEST_CASE("community graph: 15 nodes, degree 4, three communities") {
        const auto p = load_preset("community_graph");
        const auto& g = p.spec;
        CHECK(g.n_states == 15);
        REQUIRE(p.metadata.community_labels);
        const auto& labels = *p.metadata.community_labels;
        CHECK(labels.size() == 15);
        for (int c = 0; c < 3; ++c) CHECK(std::count(labels.begin(), labels.end(), c) == 5);
        std::size_t cross = 0;
        for (State s = 0; s < g.n_states; ++s) {
            std::size_t degree = 0;
            for (Action a = 0; a < g.n_actions; ++a) {
                if (!g.available(s, a)) continue;
                ++degree;
                const State t = g.successors_of(s, a)[0].state;
                CHECK(t != s);
                // undirected
                bool back = false;
                for (Action b = 0; b < g.n_actions; ++b)
                    if (g.available(t, b) && g.successors_of(t, b)[0].state == s) back = true;
                CHECK(back);
                if (labels[s] != labels[t]) ++cross;
            }
            CHECK(degree == 4);
        }
        // three bridges, counted from both ends
        CHECK(cross == 6);
    }

    TEST_CASE("revaluation graph layout") {
        using namespace revaluation;
        const auto g = load_preset("revaluation_graph").spec;
        CHECK(g.successors_of(start, go_left)[0].state == left);
        CHECK(g.successors_of(start, go_right)[0].state == right);
        CHECK(g.successors_of(left, proceed)[0].state == high_terminal);
        CHECK(g.successors_of(right, proceed)[0].state == low_terminal);
        CHECK(g.reward(high_terminal) > g.reward(low_terminal));
        CHECK(g.terminals == std::set<State>{high_terminal, low_terminal});
    }

    TEST_CASE("transfer mazes: scripted edits keep the goal reachable") {
        for (const char* name : {"transfer_maze_reward", "transfer_maze_structure"}) {
            CAPTURE(name);
            const auto p = load_preset(name);
            REQUIRE_FALSE(p.metadata.scripted_edits.empty());
            const auto edited = apply_edits(p.spec, p.metadata.scripted_edits);
            CHECK(validate(edited).empty());
            CHECK(edited != p.spec);
            const auto dist_before = oracle::steps_to_terminal(p.spec);
            const auto dist_after = oracle::steps_to_terminal(edited);
            CHECK(dist_before[p.spec.start_states[0]] < 1000);
            CHECK(dist_after[edited.start_states[0]] < 1000);
        }
    }

    TEST_CASE("structure edit forces a detour") {
        const auto p = load_preset("transfer_maze_structure");
        const auto edited = apply_edits(p.spec, p.metadata.scripted_edits);
        const auto before = oracle::steps_to_terminal(p.spec)[p.spec.start_states[0]];
        const auto after = oracle::steps_to_terminal(edited)[edited.start_states[0]];
        CHECK(after > before);
    }

    TEST_CASE("edits") {
        const auto base = compile_maze(linear_track_maze(4, 1.0));
        CHECK_THROWS_AS(apply_edit(base, ToggleWall{{1, 0}}), EditError);  // disconnects
        CHECK_THROWS_AS(apply_edit(base, ToggleWall{{0, 0}}), EditError);  // start
        CHECK_THROWS_AS(apply_edit(base, ToggleWall{{9, 0}}), EditError);
        CHECK_THROWS_AS(apply_edit(base, MoveGoal{{0, 0}}), EditError);

        const auto moved = apply_edit(base, MoveGoal{{2, 0}});
        CHECK(moved.terminals == std::set<State>{2});
        CHECK(moved.maze->maze.goal == Cell{2, 0});

        const auto swapped = apply_edit(base, SwapRewards{0, 3});
        CHECK(swapped.reward(0) == 1.0);
        CHECK(swapped.reward(3) == 0.0);
        CHECK_FALSE(swapped.maze.has_value());
        CHECK_THROWS_AS(apply_edit(base, SwapRewards{0, 9}), EditError);

        const auto rewired = apply_edit(base, RewireAction{0, 1, 3});
        CHECK(rewired.successors_of(0, 1) == std::vector<Successor>{{3, 1.0}});
        CHECK_THROWS_AS(apply_edit(base, RewireAction{0, 4, 3}), EditError);
        CHECK_THROWS_AS(apply_edit(revaluation_graph(), MoveGoal{{0, 0}}), EditError);

        CHECK(describe(ToggleWall{{5, 8}}) == "ToggleWall(5,8)");
        CHECK(describe(RewireAction{1, 0, 4}) == "RewireAction(1,0,4)");
    }
}
