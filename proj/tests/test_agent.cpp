#include <doctest.h>

#include "neuronav/agent.hpp"
#include "neuronav/error.hpp"
#include "neuronav/presets.hpp"

using namespace neuronav;

namespace {

// Feeds the same random transition stream through two agents.
void feed(Agent& a, Agent& b, std::size_t steps, std::uint64_t seed) {
    const std::size_t S = a.state().n_states(), A = a.state().n_actions();
    Rng stream(seed);
    Rng ra(seed + 1), rb(seed + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const Transition t{stream.uniform_index(S), stream.uniform_index(A), stream.uniform() * 2 - 0.5,
                           stream.uniform_index(S), stream.uniform() < 0.05};
        const Action a_next = stream.uniform_index(A);
        a.learn(t, a_next, ra);
        b.learn(t, a_next, rb);
    }
}

}  // namespace

TEST_SUITE("agent") {
    TEST_CASE("algorithm names") {
        CHECK(all_algorithms().size() == 9);
        for (Algorithm alg : all_algorithms()) {
            CHECK(parse_algorithm(algorithm_name(alg)) == alg);
        }
        CHECK(parse_algorithm("dyna-sr") == Algorithm::DynaSr);
        CHECK(parse_algorithm("td_q") == Algorithm::TdQ);
        CHECK_THROWS_WITH_AS(parse_algorithm("sarsa"), doctest::Contains("MBSR"), ConfigError);
        CHECK(is_model_based(Algorithm::Mbsr));
        CHECK_FALSE(is_model_based(Algorithm::DynaQ));
        CHECK(uses_sr(Algorithm::DynaSr));
        CHECK_FALSE(uses_sr(Algorithm::Qet));
    }

    TEST_CASE("invalid hyperparameters are rejected at construction") {
        Hyperparams hp;
        hp.beta = -1.0;
        CHECK_THROWS_AS(Agent(Algorithm::TdQ, 3, 2, hp), ConfigError);
    }

    TEST_CASE("SR learners need the next action") {
        Rng rng(1);
        Agent sr(Algorithm::TdSr, 3, 1, {});
        CHECK(sr.needs_next_action());
        CHECK_THROWS_AS(sr.learn({0, 0, 0.0, 1, false}, std::nullopt, rng), ContractError);
        CHECK_NOTHROW(sr.learn({0, 0, 1.0, 2, true}, std::nullopt, rng));
        CHECK_FALSE(Agent(Algorithm::Mbsr, 3, 1, {}).needs_next_action());
    }

    TEST_CASE("qet with lambda zero is td-q") {
        Hyperparams hp;
        hp.lambda = 0.0;
        Agent q(Algorithm::TdQ, 7, 3, hp), qet(Algorithm::Qet, 7, 3, hp);
        feed(q, qet, 1000, 3);
        CHECK(q.state().q == qet.state().q);
    }

    TEST_CASE("dyna with k = 0 is its base learner") {
        Hyperparams hp;
        hp.k_replay = 0;
        const std::pair<Algorithm, Algorithm> pairs[] = {
            {Algorithm::TdQ, Algorithm::DynaQ}, {Algorithm::TdSr, Algorithm::DynaSr}, {Algorithm::TdAc, Algorithm::DynaAc}};
        for (auto [base, dyna] : pairs) {
            CAPTURE(algorithm_name(dyna));
            Agent a(base, 6, 2, hp), b(dyna, 6, 2, hp);
            feed(a, b, 1000, 9);
            CHECK(a.state().q == b.state().q);
            CHECK(a.state().psi == b.state().psi);
            CHECK(a.state().omega == b.state().omega);
            CHECK(a.state().v == b.state().v);
            CHECK(a.state().h == b.state().h);
        }
    }

    TEST_CASE("action values come from the algorithm's table") {
        Agent q(Algorithm::TdQ, 2, 2, {});
        q.mutable_state().q_at(1, 1) = 3.0;
        CHECK(q.action_values(1) == std::vector<double>{0.0, 3.0});
        Agent ac(Algorithm::DynaAc, 2, 2, {});
        ac.mutable_state().h[ac.state().sa(0, 0)] = -2.0;
        CHECK(ac.action_values(0) == std::vector<double>{-2.0, 0.0});
        Agent sr(Algorithm::TdSr, 2, 1, {});
        sr.mutable_state().psi = {1.0, 0.5, 0.0, 1.0};
        sr.mutable_state().omega = {2.0, 4.0};
        CHECK(sr.action_values(0) == std::vector<double>{4.0});
    }

    TEST_CASE("action mask limits selection") {
        Agent a(Algorithm::TdQ, 2, 3, {});
        CHECK_THROWS_AS(a.set_action_mask({1, 1}), ContractError);
        a.set_action_mask({0, 1, 0, 1, 1, 1});
        Rng rng(2);
        for (int i = 0; i < 100; ++i) CHECK(a.select_action(0, rng) == 1);
    }

    TEST_CASE("planning cadence") {
        const auto g = revaluation_graph();
        auto count_plans = [&](PlanCadence cadence) {
            Agent a(Algorithm::Mbv, g.n_states, g.n_actions, {}, PolicyKind::Softmax, cadence);
            a.set_action_mask(action_mask(g));
            Rng rng(1);
            a.begin_episode();
            a.learn({0, 0, 0.0, 1, false}, std::nullopt, rng);
            a.learn({1, 0, 10.0, 3, true}, std::nullopt, rng);
            a.learn({0, 0, 0.0, 1, false}, std::nullopt, rng);  // as predicted
            return a.plan_count();
        };
        CHECK(count_plans(PlanCadence::Episode) == 1);
        // entering a terminal for the first time flips its flag
        CHECK(count_plans(PlanCadence::EpisodeAndSurprise) == 2);
        CHECK(count_plans(PlanCadence::EveryStep) == 4);
    }

    TEST_CASE("begin_episode clears traces") {
        Agent a(Algorithm::Qet, 2, 1, {});
        Rng rng(1);
        a.learn({0, 0, 0.0, 1, false}, std::nullopt, rng);
        CHECK(a.state().e[0] > 0.0);
        a.begin_episode();
        CHECK(a.state().e[0] == 0.0);
    }
}
