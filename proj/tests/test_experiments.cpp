#include <doctest.h>

#include <cmath>
#include <set>

#include "neuronav/error.hpp"
#include "neuronav/experiments.hpp"
#include "neuronav/presets.hpp"
#include "support/oracles.hpp"

using namespace neuronav;

namespace {

ExperimentConfig small(ExperimentKind kind, Algorithm alg) {
    auto c = ExperimentConfig::defaults_for(kind);
    c.algorithm = alg;
    c.workers = 2;
    return c;
}

void same_records(const ExperimentResult& a, const ExperimentResult& b) {
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].steps == b.records[i].steps);
        CHECK(a.records[i].ret == b.records[i].ret);
        CHECK(a.records[i].extras == b.records[i].extras);
    }
    CHECK(a.summary == b.summary);
}

}  // namespace

TEST_SUITE("experiments") {
    TEST_CASE("protocol defaults") {
        CHECK(ExperimentConfig::defaults_for(ExperimentKind::Revaluation).n_runs == 10);
        const auto reward = ExperimentConfig::defaults_for(ExperimentKind::TransferReward);
        CHECK(reward.n_runs == 5);
        CHECK(reward.edit_episode == 75);
        CHECK(ExperimentConfig::defaults_for(ExperimentKind::TransferStructure).edit_episode == 50);
        for (auto k : all_experiments()) {
            CHECK(parse_experiment(experiment_name(k)) == k);
            CHECK_NOTHROW(ExperimentConfig::defaults_for(k).validate());
        }
        CHECK_THROWS_AS(parse_experiment("maze"), ConfigError);
    }

    TEST_CASE("config validation names the field") {
        auto c = ExperimentConfig::defaults_for(ExperimentKind::TransferReward);
        c.edit_episode = 100;
        CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("edit_episode"), ConfigError);
        c = {};
        c.n_runs = 0;
        CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_runs"), ConfigError);
    }

    TEST_CASE("revaluation score") {
        const std::vector<double> a{0.1, 0.9}, b{0.9, 0.1};
        CHECK(compute_revaluation_score(a, a, 0) == 0.0);
        CHECK(compute_revaluation_score(a, b, 0) == doctest::Approx(0.8));
        CHECK_THROWS_AS(compute_revaluation_score(std::vector<double>{0.5, 0.6}, a, 0), ContractError);
        CHECK_THROWS_AS(compute_revaluation_score(a, b, 2), ContractError);
        // beta -> large: a full reversal approaches 1
        const auto pre = softmax_policy(std::vector<double>{1.0, 0.0}, 50.0);
        const auto post = softmax_policy(std::vector<double>{0.0, 1.0}, 50.0);
        CHECK(compute_revaluation_score(pre, post, 1) > 0.999);
    }

    TEST_CASE("episode on an optimal two-state chain") {
        GraphSpec g;
        g.n_states = 2;
        g.n_actions = 1;
        g.successors = {{{1, 1.0}}, {}};
        g.rewards = {0, 4};
        g.terminals = {1};
        g.start_states = {0};
        Agent agent(Algorithm::TdQ, 2, 1, {});
        Rng env(1), ag(2);
        const auto o = run_episode(agent, g, 10, env, ag);
        CHECK(o.steps == 1);
        CHECK(o.ret == 4.0);
        CHECK(o.done);
    }

    TEST_CASE("truncation and return bookkeeping") {
        const auto g = load_preset("open_field").spec;
        for (Algorithm alg : all_algorithms()) {
            CAPTURE(algorithm_name(alg));
            Agent agent(alg, g.n_states, g.n_actions, {});
            Rng env(3), ag(4);
            const auto o = run_episode(agent, g, 5, env, ag);
            CHECK(o.steps == 5);  // the goal is 18 steps away
            CHECK_FALSE(o.done);
            double total = 0.0;
            for (const auto& t : o.trajectory) total += t.r;
            CHECK(o.ret == total);

            Agent again(alg, g.n_states, g.n_actions, {});
            Rng env2(3), ag2(4);
            CHECK(run_episode(again, g, 5, env2, ag2).trajectory == o.trajectory);
        }
    }

    TEST_CASE("revaluation: record layout, determinism, TD-Q is blind to relearning") {
        auto c = small(ExperimentKind::Revaluation, Algorithm::TdQ);
        c.n_runs = 3;
        const auto r = run_revaluation(c);
        CHECK(r.records.size() == 6);
        CHECK(r.metric_columns.size() == 5);
        CHECK(std::get<std::string>(r.records[0].extras[0]) == "reward");
        CHECK(std::get<std::string>(r.records[1].extras[0]) == "transition");
        // Q(s0, .) is untouched after the learning phase
        for (const auto& rec : r.records) CHECK(std::get<double>(rec.extras[4]) == 0.0);
        same_records(r, run_revaluation(c));
        c.workers = 1;
        same_records(r, run_revaluation(c));
    }

    TEST_CASE("revaluation: MBV revalues under both conditions") {
        auto c = small(ExperimentKind::Revaluation, Algorithm::Mbv);
        c.n_runs = 3;
        const auto r = run_revaluation(c);
        CHECK(r.summary.at("mean_reward_score") > 0.2);
        CHECK(r.summary.at("mean_transition_score") > 0.2);
    }

    TEST_CASE("transfer: hash changes exactly once, at the edit") {
        auto c = small(ExperimentKind::TransferStructure, Algorithm::Mbv);
        c.n_runs = 2;
        c.n_episodes = 12;
        c.edit_episode = 6;
        const auto r = run_transfer(c);
        CHECK(r.records.size() == 24);
        for (std::size_t run = 0; run < 2; ++run) {
            std::size_t changes = 0;
            for (std::size_t i = 1; i < 12; ++i) {
                const auto& prev = r.records[run * 12 + i - 1];
                const auto& cur = r.records[run * 12 + i];
                if (std::get<std::string>(prev.extras[1]) != std::get<std::string>(cur.extras[1])) {
                    ++changes;
                    CHECK(cur.episode == 6);
                }
            }
            CHECK(changes == 1);
        }
        CHECK(r.point_sets.at("mean_steps").cols() == 12);
        CHECK(r.snapshot.has_value());
    }

    TEST_CASE("transfer: a single episode without edit") {
        auto c = small(ExperimentKind::TransferReward, Algorithm::TdQ);
        c.n_runs = 2;
        c.n_episodes = 1;
        c.edit_episode.reset();
        const auto r = run_transfer(c);
        CHECK(r.records.size() == 2);
        CHECK_FALSE(r.summary.contains("post_to_pre_ratio"));
        c.experiment = ExperimentKind::Community;
        CHECK_THROWS_AS(run_transfer(c), ConfigError);
    }

    TEST_CASE("transfer windows") {
        const auto w = transfer_windows(75);
        CHECK(w.pre_first == 60);
        CHECK(w.pre_last == 74);
        CHECK(w.post_first == 90);
        CHECK(w.post_last == 100);
        const auto s = transfer_windows(50);
        CHECK(s.post_first == 65);
        CHECK(s.post_last == 75);
    }

    TEST_CASE("exact Q values agree with brute force") {
        const auto g = revaluation_graph();
        const auto q = exact_q_values(g, 0.9);
        CHECK(q[0 * 2 + 0] == doctest::Approx(9.0));
        CHECK(q[0 * 2 + 1] == doctest::Approx(0.9));
        const auto best = oracle::optimal_policy(g, 0.9);
        CHECK(best.values[0] == doctest::Approx(9.0));
    }

    TEST_CASE("random-policy SR approaches the matrix inverse") {
        const auto g = load_preset("linear_track").spec;
        SrTrainingOptions opt;
        opt.alpha = 1.0;
        opt.alpha_decay = 15.0;
        opt.uniform_start = true;
        opt.max_episodes = 1'000'000;
        opt.max_total_steps = 2'000'000;
        Rng env(1), ag(2);
        const auto tr = learn_random_policy_sr(g, opt, env, ag);
        const auto m = oracle::random_policy_sr(g, opt.gamma);
        double worst = 0.0;
        for (State s = 0; s < g.n_states; ++s)
            for (State j = 0; j < g.n_states; ++j)
                worst = std::max(worst, std::abs(tr.state_sr[s * g.n_states + j] - m[s][j]));
        CHECK(worst < 0.05);
        CHECK(tr.steps >= opt.max_total_steps);
    }

    TEST_CASE("place-grid: maps, shapes, non-negativity") {
        auto c = small(ExperimentKind::PlaceGrid, Algorithm::TdSr);
        c.n_episodes = 200;
        c.n_place_maps = 4;
        c.n_components = 3;
        const auto r = run_place_grid(c);
        std::size_t place = 0, grid = 0;
        for (const auto& [name, m] : r.field_maps) {
            CHECK(m.rows() == 10);
            CHECK(m.cols() == 10);
            if (name.starts_with("place_")) ++place;
            if (name.starts_with("grid_pc")) ++grid;
        }
        CHECK(place == 4);
        CHECK(grid == 3);
        CHECK(r.field_maps.contains("place_000"));
        CHECK(r.field_maps.contains("place_099"));
        CHECK(r.summary.at("place_min_value") >= 0.0);
        CHECK(r.records.size() <= 200);
    }

    TEST_CASE("random walk stays on edges and ignores terminals") {
        const auto g = community_graph();
        Rng rng(6);
        const auto walk = random_walk(g, 0, 5000, rng);
        CHECK(walk.size() == 5001);
        std::set<State> seen(walk.begin(), walk.end());
        CHECK(seen.size() == 15);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            bool edge = false;
            for (Action a = 0; a < g.n_actions; ++a)
                if (g.available(walk[i], a) && g.successors_of(walk[i], a)[0].state == walk[i + 1]) edge = true;
            CHECK(edge);
        }
    }

    TEST_CASE("community: hidden layer separates communities") {
        auto c = small(ExperimentKind::Community, Algorithm::TdSr);
        c.walk_steps = 20000;
        c.permutations = 200;
        const auto r = run_community(c);
        CHECK(r.records.size() == 1);
        CHECK(r.summary.at("separation_onehot") == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.summary.at("separation_hidden") > r.summary.at("null_p95"));
        CHECK(r.point_sets.at("hidden_2d").rows() == 15);
        CHECK(r.point_sets.at("hidden_2d").cols() == 2);
        CHECK(r.point_labels.at("onehot_2d").size() == 15);
    }

    TEST_CASE("run_experiment dispatches") {
        auto c = small(ExperimentKind::TransferReward, Algorithm::TdQ);
        c.n_runs = 1;
        c.n_episodes = 3;
        c.edit_episode = 2;
        const auto r = run_experiment(c);
        CHECK(r.experiment == ExperimentKind::TransferReward);
        CHECK(r.records.size() == 3);
    }
}
