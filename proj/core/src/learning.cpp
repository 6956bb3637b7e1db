#include "neuronav/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neuronav/error.hpp"
#include "neuronav/policy.hpp"

namespace neuronav {

void Hyperparams::validate() const {
    auto fail = [](const char* field, const char* range) {
        throw ConfigError(std::string("hyperparameter '") + field + "' out of range " + range);
    };
    if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha", "(0, 1]");
    if (!(alpha_w > 0.0 && alpha_w <= 1.0)) fail("alpha_w", "(0, 1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma", "[0, 1)");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda", "[0, 1]");
    if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta", ">= 0");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon", "[0, 1]");
    if (!(vi_tol > 0.0)) fail("vi_tol", "> 0");
    if (vi_max_iters < 1) fail("vi_max_iters", ">= 1");
}

AgentState::AgentState(std::size_t n_states, std::size_t n_actions)
    : q(n_states * n_actions, 0.0),
      psi(n_states * n_actions * n_states, 0.0),
      omega(n_states, 0.0),
      v(n_states, 0.0),
      h(n_states * n_actions, 0.0),
      e(n_states * n_actions, 0.0),
      counts(n_states * n_actions * n_states, 0),
      reward_model(n_states * n_actions, 0.0),
      terminal_seen(n_states, 0),
      available(n_states * n_actions, 1),
      n_states_(n_states),
      n_actions_(n_actions) {}

std::int64_t AgentState::visits(State s, Action a) const {
    const auto* row = counts.data() + sa(s, a) * n_states_;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < n_states_; ++i) n += row[i];
    return n;
}

std::vector<double> AgentState::transition_estimate(State s, Action a) const {
    std::vector<double> p(n_states_, 0.0);
    const auto n = visits(s, a);
    if (n == 0) {
        p[s] = 1.0;
        return p;
    }
    const auto* row = counts.data() + sa(s, a) * n_states_;
    for (std::size_t i = 0; i < n_states_; ++i) p[i] = static_cast<double>(row[i]) / static_cast<double>(n);
    return p;
}

double AgentState::reward_estimate(State s, Action a) const { return reward_model[sa(s, a)]; }

double AgentState::sr_value(State s, Action a) const {
    const auto row = psi_row(s, a);
    double total = 0.0;
    for (std::size_t i = 0; i < n_states_; ++i) total += row[i] * omega[i];
    return total;
}

namespace {

double max_q(const AgentState& st, State s) {
    double best = -std::numeric_limits<double>::infinity();
    const auto avail = st.available_row(s);
    for (Action a = 0; a < st.n_actions(); ++a)
        if (avail[a]) best = std::max(best, st.q[st.sa(s, a)]);
    return std::isfinite(best) ? best : 0.0;
}

Action greedy_sr_action(const AgentState& st, State s) {
    std::vector<double> values(st.n_actions());
    for (Action a = 0; a < st.n_actions(); ++a) values[a] = st.sr_value(s, a);
    const auto avail = st.available_row(s);
    // A replayed memory can end in a state that has since lost every action.
    if (std::find(avail.begin(), avail.end(), 1) == avail.end()) return greedy_action(values);
    return greedy_action(values, avail);
}

}  // namespace

double td_q_update(AgentState& st, const Transition& t, const Hyperparams& hp) {
    const double bootstrap = t.done ? 0.0 : max_q(st, t.s_next);
    double& q = st.q_at(t.s, t.a);
    const double delta = t.r + hp.gamma * bootstrap - q;
    q += hp.alpha * delta;
    return delta;
}

double td_sr_psi_update(AgentState& st, const Transition& t, Action a_next, const Hyperparams& hp) {
    const std::size_t n = st.n_states();
    std::vector<double> target(n, 0.0);
    if (t.done) {
        target[t.s_next] = hp.gamma;
    } else {
        const auto next = st.psi_row(t.s_next, a_next);
        for (std::size_t i = 0; i < n; ++i) target[i] = hp.gamma * next[i];
    }
    target[t.s] += 1.0;

    auto row = st.psi_row(t.s, t.a);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double err = target[i] - row[i];
        norm2 += err * err;
        row[i] += hp.alpha * err;
    }
    return std::sqrt(norm2);
}

double omega_update(AgentState& st, const Transition& t, const Hyperparams& hp) {
    double& w = st.omega[t.s_next];
    const double err = t.r - w;
    w += hp.alpha_w * err;
    return err;
}

SrError td_sr_update(AgentState& st, const Transition& t, Action a_next, const Hyperparams& hp) {
    SrError out;
    out.sr_error_norm = td_sr_psi_update(st, t, a_next, hp);
    out.w_error = omega_update(st, t, hp);
    return out;
}

double td_ac_update(AgentState& st, const Transition& t, const Hyperparams& hp) {
    const double bootstrap = t.done ? 0.0 : st.v[t.s_next];
    const double delta = t.r + hp.gamma * bootstrap - st.v[t.s];
    st.v[t.s] += hp.alpha * delta;
    st.h[st.sa(t.s, t.a)] += hp.alpha * delta;
    return delta;
}

double qet_update(AgentState& st, const Transition& t, const Hyperparams& hp) {
    const double bootstrap = t.done ? 0.0 : max_q(st, t.s_next);
    const double delta = t.r + hp.gamma * bootstrap - st.q_at(t.s, t.a);
    const double decay = hp.gamma * hp.lambda;
    for (auto& x : st.e) x *= decay;
    st.e[st.sa(t.s, t.a)] += 1.0;
    const double step = hp.alpha * delta;
    for (std::size_t i = 0; i < st.q.size(); ++i) st.q[i] += step * st.e[i];
    return delta;
}

std::size_t dyna_replay(AgentState& st, ReplayRule rule, const Hyperparams& hp, Rng& rng) {
    if (st.buffer.empty() || hp.k_replay == 0) return 0;
    const std::size_t n = std::min(hp.k_replay, st.buffer.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Transition t = st.buffer[rng.uniform_index(st.buffer.size())];
        switch (rule) {
            case ReplayRule::TdQ: td_q_update(st, t, hp); break;
            case ReplayRule::TdAc: td_ac_update(st, t, hp); break;
            case ReplayRule::TdSr: {
                const Action a_next = t.done ? 0 : greedy_sr_action(st, t.s_next);
                td_sr_psi_update(st, t, a_next, hp);
                break;
            }
        }
    }
    return n;
}

bool mbv_learn(AgentState& st, const Transition& t, const Hyperparams& hp) {
    const std::size_t n_states = st.n_states();
    const std::size_t pair = st.sa(t.s, t.a);
    const auto prior_visits = st.visits(t.s, t.a);
    double& r_hat = st.reward_model[pair];
    const std::span<std::int64_t> row(st.counts.data() + pair * n_states, n_states);

    const double reward_tol = 1e-6 * std::max(1.0, std::abs(t.r));
    // First visits only fill in the model; they contradict nothing.
    bool surprise = prior_visits > 0 && row[t.s_next] < *std::max_element(row.begin(), row.end());
    surprise = surprise || (st.terminal_seen[t.s_next] != 0) != t.done;
    surprise = surprise || (prior_visits > 0 && std::abs(t.r - r_hat) > reward_tol);

    ++row[t.s_next];
    // Reward: sample mean for the first 1/alpha_w visits, then recency-weighted.
    const double rate = std::max(1.0 / static_cast<double>(prior_visits + 1), hp.alpha_w);
    r_hat += rate * (t.r - r_hat);
    st.terminal_seen[t.s_next] = t.done ? 1 : 0;
    return surprise;
}

namespace {

struct SparseModel {
    // Row (s, a): observed successors with probabilities; self-loop if unvisited.
    std::vector<std::vector<std::pair<State, double>>> rows;
    std::vector<char> visited;
};

SparseModel build_model(const AgentState& st) {
    const std::size_t S = st.n_states();
    const std::size_t A = st.n_actions();
    SparseModel m;
    m.rows.resize(S * A);
    m.visited.assign(S * A, 0);
    for (State s = 0; s < S; ++s) {
        for (Action a = 0; a < A; ++a) {
            const std::size_t pair = st.sa(s, a);
            const auto* row = st.counts.data() + pair * S;
            std::int64_t n = 0;
            for (std::size_t i = 0; i < S; ++i) n += row[i];
            auto& out = m.rows[pair];
            if (n == 0) {
                out.emplace_back(s, 1.0);
                continue;
            }
            m.visited[pair] = 1;
            for (std::size_t i = 0; i < S; ++i)
                if (row[i] > 0) out.emplace_back(i, static_cast<double>(row[i]) / static_cast<double>(n));
        }
    }
    return m;
}

constexpr Action kNoAction = static_cast<Action>(-1);

// kNoAction where a state has no available action; such rows of T_pi are zero.
std::vector<Action> greedy_policy(const AgentState& st, const std::vector<double>& q) {
    std::vector<Action> pi(st.n_states(), kNoAction);
    for (State s = 0; s < st.n_states(); ++s) {
        const auto avail = st.available_row(s);
        if (std::find(avail.begin(), avail.end(), 1) == avail.end()) continue;
        pi[s] = greedy_action(std::span<const double>(q.data() + s * st.n_actions(), st.n_actions()),
                              st.available_row(s));
    }
    return pi;
}

}  // namespace

std::vector<double> mbv_plan(AgentState& st, const Hyperparams& hp, PlanStats* stats) {
    const std::size_t S = st.n_states();
    const std::size_t A = st.n_actions();
    const SparseModel model = build_model(st);
    std::vector<double> q(S * A, 0.0);
    std::vector<double> next_q(S * A, 0.0);
    std::vector<double> v(S, 0.0);

    PlanStats local;
    for (std::size_t it = 0; it < hp.vi_max_iters; ++it) {
        for (State s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (Action a = 0; a < A; ++a)
                if (st.available[st.sa(s, a)]) best = std::max(best, q[st.sa(s, a)]);
            v[s] = (st.terminal_seen[s] || !std::isfinite(best)) ? 0.0 : best;
        }
        double change = 0.0;
        for (std::size_t pair = 0; pair < S * A; ++pair) {
            if (!st.available[pair]) continue;
            double target = model.visited[pair] ? st.reward_model[pair] : 0.0;
            for (const auto& [next, p] : model.rows[pair]) target += hp.gamma * p * v[next];
            change = std::max(change, std::abs(target - q[pair]));
            next_q[pair] = target;
        }
        q.swap(next_q);
        local.iterations = it + 1;
        local.last_change = change;
        if (change < hp.vi_tol) break;
    }
    st.q = q;
    if (stats) *stats = local;
    return q;
}

std::vector<double> mbsr_plan(AgentState& st, const Hyperparams& hp, PlanStats* stats) {
    const std::size_t S = st.n_states();
    const std::size_t A = st.n_actions();
    const SparseModel model = build_model(st);
    std::vector<Action> policy = greedy_policy(st, st.q);
    PlanStats local;

    auto policy_row = [&](State s) -> const std::vector<std::pair<State, double>>* {
        if (st.terminal_seen[s] || policy[s] == kNoAction) return nullptr;  // zero row of T_pi
        return &model.rows[st.sa(s, policy[s])];
    };

    // Policy improvement only needs M . omega, which costs O(S) per term
    // instead of O(S^2); the full M is built once for the final policy.
    double omega_scale = 1.0;
    for (double w : st.omega) omega_scale = std::max(omega_scale, std::abs(w));
    std::vector<double> value(S), term(S), next_term(S), q(S * A, 0.0);
    for (std::size_t round = 0; round < kMbsrMaxRounds; ++round) {
        value = st.omega;
        term = st.omega;
        for (std::size_t it = 0; it < hp.vi_max_iters; ++it) {
            double norm = 0.0;
            for (State s = 0; s < S; ++s) {
                double x = 0.0;
                if (const auto* row = policy_row(s))
                    for (const auto& [next, p] : *row) x += hp.gamma * p * term[next];
                next_term[s] = x;
                norm = std::max(norm, std::abs(x));
            }
            for (State s = 0; s < S; ++s) value[s] += next_term[s];
            term.swap(next_term);
            if (norm < hp.vi_tol * omega_scale) break;
        }
        for (std::size_t pair = 0; pair < S * A; ++pair) {
            double x = 0.0;
            if (st.available[pair])
                for (const auto& [next, p] : model.rows[pair]) x += p * value[next];
            q[pair] = x;
        }
        std::vector<Action> improved = greedy_policy(st, q);
        if (improved == policy) break;
        policy = std::move(improved);
    }

    // M = sum_i (gamma T_pi)^i
    std::vector<double> occupancy(S * S, 0.0), mterm(S * S, 0.0), next_mterm(S * S);
    for (State s = 0; s < S; ++s) occupancy[s * S + s] = mterm[s * S + s] = 1.0;
    for (std::size_t it = 0; it < hp.vi_max_iters; ++it) {
        std::fill(next_mterm.begin(), next_mterm.end(), 0.0);
        double norm = 0.0;
        for (State s = 0; s < S; ++s) {
            const auto* row = policy_row(s);
            if (!row) continue;
            double* out = next_mterm.data() + s * S;
            for (const auto& [next, p] : *row) {
                const double w = hp.gamma * p;
                const double* in = mterm.data() + next * S;
                for (std::size_t j = 0; j < S; ++j) out[j] += w * in[j];
            }
            for (std::size_t j = 0; j < S; ++j) norm = std::max(norm, std::abs(out[j]));
        }
        for (std::size_t i = 0; i < S * S; ++i) occupancy[i] += next_mterm[i];
        mterm.swap(next_mterm);
        local.iterations += 1;
        local.last_change = norm;
        if (norm < hp.vi_tol) break;
    }

    for (std::size_t pair = 0; pair < S * A; ++pair) {
        auto row = std::span<double>(st.psi.data() + pair * S, S);
        std::fill(row.begin(), row.end(), 0.0);
        if (!st.available[pair]) {
            q[pair] = 0.0;
            continue;
        }
        for (const auto& [next, p] : model.rows[pair]) {
            const double* m = occupancy.data() + next * S;
            for (std::size_t j = 0; j < S; ++j) row[j] += p * m[j];
        }
        double v = 0.0;
        for (std::size_t j = 0; j < S; ++j) v += row[j] * st.omega[j];
        q[pair] = v;
    }
    st.q = q;
    if (stats) *stats = local;
    return q;
}

}  // namespace neuronav
