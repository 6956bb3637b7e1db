#include <benchmark/benchmark.h>

#include "neuronav/agent.hpp"
#include "neuronav/experiments.hpp"
#include "neuronav/pca.hpp"
#include "neuronav/predictive_net.hpp"
#include "neuronav/presets.hpp"

using namespace neuronav;

namespace {

const GraphSpec& open_field() {
    static const GraphSpec spec = load_preset("open_field").spec;
    return spec;
}

// Agent state with every available pair of the open field visited once.
AgentState explored_state(const Hyperparams& hp) {
    const auto& g = open_field();
    AgentState st(g.n_states, g.n_actions);
    st.available = action_mask(g);
    Rng rng(1);
    for (State s = 0; s < g.n_states; ++s) {
        if (g.is_terminal(s)) continue;
        for (Action a = 0; a < g.n_actions; ++a) {
            const auto t = step(g, s, a, rng);
            mbv_learn(st, t, hp);
            omega_update(st, t, hp);
        }
    }
    return st;
}

void BM_step(benchmark::State& state) {
    const auto& g = open_field();
    Rng rng(1);
    State s = reset(g, rng);
    for (auto _ : state) {
        const auto t = step(g, s, rng.uniform_index(4), rng);
        s = t.done ? reset(g, rng) : t.s_next;
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_step);

void BM_td_q_update(benchmark::State& state) {
    AgentState st(100, 4);
    Hyperparams hp;
    Rng rng(2);
    for (auto _ : state) {
        const Transition t{rng.uniform_index(100), rng.uniform_index(4), 0.0, rng.uniform_index(100), false};
        benchmark::DoNotOptimize(td_q_update(st, t, hp));
    }
}
BENCHMARK(BM_td_q_update);

void BM_td_sr_update(benchmark::State& state) {
    AgentState st(100, 4);
    Hyperparams hp;
    Rng rng(3);
    for (auto _ : state) {
        const Transition t{rng.uniform_index(100), rng.uniform_index(4), 0.0, rng.uniform_index(100), false};
        benchmark::DoNotOptimize(td_sr_update(st, t, rng.uniform_index(4), hp));
    }
}
BENCHMARK(BM_td_sr_update);

void BM_episode(benchmark::State& state) {
    const auto alg = static_cast<Algorithm>(state.range(0));
    const auto& g = open_field();
    Agent agent(alg, g.n_states, g.n_actions, {});
    Rng env(4), ag(5);
    for (auto _ : state) benchmark::DoNotOptimize(run_episode(agent, g, 200, env, ag).steps);
    state.SetLabel(std::string(algorithm_name(alg)));
}
BENCHMARK(BM_episode)->DenseRange(0, 8)->Unit(benchmark::kMicrosecond);

void BM_mbv_plan(benchmark::State& state) {
    Hyperparams hp;
    auto st = explored_state(hp);
    for (auto _ : state) benchmark::DoNotOptimize(mbv_plan(st, hp));
}
BENCHMARK(BM_mbv_plan)->Unit(benchmark::kMicrosecond);

void BM_mbsr_plan(benchmark::State& state) {
    Hyperparams hp;
    auto st = explored_state(hp);
    for (auto _ : state) benchmark::DoNotOptimize(mbsr_plan(st, hp));
}
BENCHMARK(BM_mbsr_plan)->Unit(benchmark::kMillisecond);

void BM_pca(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix x(n, n);
    Rng rng(6);
    for (auto& v : x.data()) v = rng.uniform();
    for (auto _ : state) benchmark::DoNotOptimize(pca(x, 6).eigenvalues);
}
BENCHMARK(BM_pca)->Arg(15)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_net_train_step(benchmark::State& state) {
    Rng rng(7);
    auto net = PredictiveNet::init(15, 20, rng);
    std::vector<double> x(15, 0.0);
    for (auto _ : state) {
        const auto s = rng.uniform_index(15);
        x[s] = 1.0;
        benchmark::DoNotOptimize(net_train_step(net, x, rng.uniform_index(15), 0.1));
        x[s] = 0.0;
    }
}
BENCHMARK(BM_net_train_step);

}  // namespace

BENCHMARK_MAIN();
