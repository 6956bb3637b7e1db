#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "neuronav/graph.hpp"
#include "neuronav/rng.hpp"

namespace neuronav {

struct Hyperparams {
    double alpha = 0.1;     // value / SR learning rate
    double alpha_w = 0.1;   // reward weight and reward model rate
    double gamma = 0.95;
    double lambda = 0.9;    // trace decay
    double beta = 5.0;      // softmax inverse temperature
    double epsilon = 0.1;
    std::size_t k_replay = 10;
    double vi_tol = 1e-4;
    std::size_t vi_max_iters = 1000;

    // Throws ConfigError naming the first out-of-range field.
    void validate() const;

    bool operator==(const Hyperparams&) const = default;
};

// Learned tables for every algorithm. Each algorithm touches only the
// tables it owns; the rest stay at their initial values.
class AgentState {
public:
    AgentState(std::size_t n_states, std::size_t n_actions);

    std::size_t n_states() const noexcept { return n_states_; }
    std::size_t n_actions() const noexcept { return n_actions_; }

    std::vector<double> q;        // S x A
    std::vector<double> psi;      // S x A x S
    std::vector<double> omega;    // S
    std::vector<double> v;        // S
    std::vector<double> h;        // S x A, policy preferences
    std::vector<double> e;        // S x A, eligibility
    std::vector<std::int64_t> counts;  // S x A x S
    std::vector<double> reward_model;  // S x A, running estimate of observed reward
    std::vector<char> terminal_seen;   // S, last observed done flag on entry
    std::vector<Transition> buffer;    // replay memory, unbounded
    std::vector<char> available;       // S x A; all ones unless a mask is installed

    std::size_t sa(State s, Action a) const noexcept { return s * n_actions_ + a; }

    double& q_at(State s, Action a) { return q[sa(s, a)]; }
    double q_at(State s, Action a) const { return q[sa(s, a)]; }

    std::span<double> psi_row(State s, Action a) { return {psi.data() + sa(s, a) * n_states_, n_states_}; }
    std::span<const double> psi_row(State s, Action a) const {
        return {psi.data() + sa(s, a) * n_states_, n_states_};
    }
    std::span<const char> available_row(State s) const { return {available.data() + s * n_actions_, n_actions_}; }

    std::int64_t visits(State s, Action a) const;

    // Learned model. Unvisited pairs are self-loops with zero reward.
    std::vector<double> transition_estimate(State s, Action a) const;
    double reward_estimate(State s, Action a) const;

    // psi(s, a) . omega
    double sr_value(State s, Action a) const;

    bool operator==(const AgentState&) const = default;

private:
    std::size_t n_states_;
    std::size_t n_actions_;
};

// One-step Q-learning. Returns the TD error.
double td_q_update(AgentState& st, const Transition& t, const Hyperparams& hp);

struct SrError {
    double sr_error_norm = 0.0;  // L2 norm of the SR prediction error
    double w_error = 0.0;        // r - omega(s')
};

// On-policy SR step for psi(s, a) followed by the reward-weight step for
// omega(s'). A terminal successor contributes gamma * onehot(s') to the target.
SrError td_sr_update(AgentState& st, const Transition& t, Action a_next, const Hyperparams& hp);

// The psi half of td_sr_update. Returns the SR error norm.
double td_sr_psi_update(AgentState& st, const Transition& t, Action a_next, const Hyperparams& hp);

// omega(s') <- omega(s') + alpha_w (r - omega(s')). Returns r - omega(s') before the step.
double omega_update(AgentState& st, const Transition& t, const Hyperparams& hp);

// Actor-critic: V(s) and H(s, a) both move by alpha * delta.
double td_ac_update(AgentState& st, const Transition& t, const Hyperparams& hp);

// Watkins-free accumulating traces: e <- gamma lambda e; e(s,a) += 1; Q += alpha delta e.
double qet_update(AgentState& st, const Transition& t, const Hyperparams& hp);

enum class ReplayRule { TdQ, TdSr, TdAc };

// Uniform replay with replacement of min(k_replay, |buffer|) stored
// transitions. Replayed SR steps update psi only, completing a_next greedily
// from psi . omega.
std::size_t dyna_replay(AgentState& st, ReplayRule rule, const Hyperparams& hp, Rng& rng);

// Records t in counts / reward model / terminal flags. T-hat is the
// normalized counts. The reward model is the sample mean for the first
// 1/alpha_w visits of a pair and recency-weighted with rate alpha_w after.
// Returns true when the observation contradicts the model's prediction: a
// successor other than the most likely one on a visited pair, a changed
// terminal flag, or a changed reward. Model-based agents replan on it.
bool mbv_learn(AgentState& st, const Transition& t, const Hyperparams& hp);

struct PlanStats {
    std::size_t iterations = 0;
    double last_change = 0.0;
};

// Value iteration on the empirical model from Q = 0. Writes and returns Q.
std::vector<double> mbv_plan(AgentState& st, const Hyperparams& hp, PlanStats* stats = nullptr);

// SR computed from the empirical model under the greedy policy, iterated
// with policy improvement until stable (at most 50 rounds). Writes psi and
// Q = psi . omega, and returns Q.
std::vector<double> mbsr_plan(AgentState& st, const Hyperparams& hp, PlanStats* stats = nullptr);

inline constexpr std::size_t kMbsrMaxRounds = 50;

}  // namespace neuronav
