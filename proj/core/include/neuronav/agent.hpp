#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "neuronav/learning.hpp"
#include "neuronav/policy.hpp"

namespace neuronav {

enum class Algorithm { TdQ, TdSr, TdAc, DynaQ, DynaSr, DynaAc, Mbv, Mbsr, Qet };

std::string_view algorithm_name(Algorithm alg);
// Accepts the display names ("TD-Q", "Dyna-SR", "MBV", ...), case-insensitive.
Algorithm parse_algorithm(std::string_view name);
std::span<const Algorithm> all_algorithms();

bool is_model_based(Algorithm alg);
bool uses_sr(Algorithm alg);

// When model-based agents replan.
enum class PlanCadence {
    Episode,            // at the start of each episode only
    EpisodeAndSurprise, // also after any step the model did not predict
    EveryStep,
};

// One of the nine learners bound to its hyperparameters and action-selection
// rule. Owns its AgentState; single-threaded.
class Agent {
public:
    Agent(Algorithm alg, std::size_t n_states, std::size_t n_actions, Hyperparams hp,
          PolicyKind policy = PolicyKind::Softmax, PlanCadence cadence = PlanCadence::EpisodeAndSurprise);

    Algorithm algorithm() const noexcept { return alg_; }
    const Hyperparams& hyperparams() const noexcept { return hp_; }
    PolicyKind policy_kind() const noexcept { return policy_; }
    PlanCadence cadence() const noexcept { return cadence_; }

    const AgentState& state() const noexcept { return state_; }
    AgentState& mutable_state() noexcept { return state_; }

    // Installs an S x A availability table (see action_mask()).
    void set_action_mask(std::vector<char> mask);

    // Q for TD-Q / Dyna-Q / MBV / QET, psi . omega for the SR family, H for actor-critic.
    std::vector<double> action_values(State s) const;

    Action select_action(State s, Rng& rng) const;

    // TD-SR and Dyna-SR bootstrap from the action actually taken at s'.
    bool needs_next_action() const noexcept;

    // Clears traces; model-based agents replan.
    void begin_episode();

    // Applies the algorithm's update for one real transition. a_next is
    // required when needs_next_action() and the step is not terminal.
    void learn(const Transition& t, std::optional<Action> a_next, Rng& rng);

    void plan();

    std::size_t plan_count() const noexcept { return plans_; }

private:
    Algorithm alg_;
    Hyperparams hp_;
    PolicyKind policy_;
    PlanCadence cadence_;
    AgentState state_;
    std::size_t plans_ = 0;
};

// Softmax sampling or epsilon-greedy over `values` restricted to `available`.
Action select_action(std::span<const double> values, PolicyKind kind, const Hyperparams& hp,
                     std::span<const char> available, Rng& rng);

}  // namespace neuronav
