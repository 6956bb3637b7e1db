#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "neuronav/agent.hpp"
#include "neuronav/graph.hpp"
#include "neuronav/matrix.hpp"

namespace neuronav {

enum class ExperimentKind { Revaluation, TransferReward, TransferStructure, PlaceGrid, Community };

std::string_view experiment_name(ExperimentKind kind);  // "revaluation", "transfer-reward", ...
ExperimentKind parse_experiment(std::string_view name);
std::vector<ExperimentKind> all_experiments();

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Revaluation;
    Algorithm algorithm = Algorithm::TdQ;
    PolicyKind policy = PolicyKind::Softmax;
    PlanCadence cadence = PlanCadence::EpisodeAndSurprise;
    Hyperparams hyperparams;
    std::size_t n_runs = 10;
    std::size_t n_episodes = 50;
    std::size_t max_steps_per_episode = 1000;
    std::optional<std::size_t> edit_episode;  // 1-based; edit applies before this episode
    std::uint64_t master_seed = 1;

    // revaluation: episodes started at the intermediate states after the edit
    std::size_t relearn_episodes = 20;

    // place-grid
    std::size_t sr_episode_cap = 3000;
    double sr_tol = 1e-3;
    std::size_t n_place_maps = 8;
    std::size_t n_components = 6;

    // community
    std::size_t hidden_dim = 20;
    std::size_t walk_steps = 50000;
    double net_lr = 0.1;
    std::size_t permutations = 1000;

    std::size_t workers = 0;  // 0: hardware concurrency

    // Protocol defaults (run counts, episode counts, edit episodes, algorithm).
    static ExperimentConfig defaults_for(ExperimentKind kind);

    // Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

using MetricValue = std::variant<double, std::string>;

struct Record {
    std::size_t run = 0;
    std::size_t episode = 0;
    std::size_t steps = 0;
    double ret = 0.0;
    std::vector<MetricValue> extras;  // aligned with ExperimentResult::metric_columns
};

struct ExperimentResult {
    ExperimentKind experiment = ExperimentKind::Revaluation;
    Algorithm algorithm = Algorithm::TdQ;
    std::uint64_t seed = 0;
    std::vector<std::string> metric_columns;
    std::vector<Record> records;
    std::map<std::string, Matrix> field_maps;   // height x width grids
    std::map<std::string, Matrix> point_sets;   // rows are points
    std::map<std::string, std::vector<int>> point_labels;
    std::map<std::string, double> summary;
    std::optional<AgentState> snapshot;  // final learned state of run 0, where an agent exists
};

struct EpisodeOutcome {
    std::size_t steps = 0;
    double ret = 0.0;
    bool done = false;
    std::vector<Transition> trajectory;
};

// select_action -> step -> learn until terminal or max_steps. The agent's
// action mask is refreshed from `spec`, traces reset, and model-based agents
// plan at the start. `start` overrides reset().
EpisodeOutcome run_episode(Agent& agent, const GraphSpec& spec, std::size_t max_steps, Rng& env_rng,
                           Rng& agent_rng, std::optional<State> start = std::nullopt);

// p_post[a_star] - p_pre[a_star]; throws ContractError on malformed distributions.
double compute_revaluation_score(std::span<const double> p_pre, std::span<const double> p_post, Action a_star);

enum class RevaluationCondition { Reward, Transition };
std::string_view condition_name(RevaluationCondition c);

ExperimentResult run_revaluation(const ExperimentConfig& config);
ExperimentResult run_transfer(const ExperimentConfig& config);  // kind from config.experiment
ExperimentResult run_place_grid(const ExperimentConfig& config);
ExperimentResult run_community(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Windows used to judge adaptation in the transfer protocols (1-based, inclusive).
struct TransferWindows {
    std::size_t pre_first, pre_last, post_first, post_last;
};
TransferWindows transfer_windows(std::size_t edit_episode);

// Optimal Q by value iteration on the true spec (iterated to 1e-12).
std::vector<double> exact_q_values(const GraphSpec& spec, double gamma);

struct SrTraining {
    std::vector<double> state_sr;  // S x S, row s = mean over available actions of psi(s, a)
    std::size_t episodes = 0;
    std::size_t steps = 0;
    std::vector<double> increments;  // max |delta psi| per episode
};

struct SrTrainingOptions {
    double gamma = 0.95;
    double alpha = 0.1;
    // Per-pair step size max(alpha_floor, alpha * decay / (decay + visits)); decay = 0 keeps alpha constant.
    double alpha_decay = 0.0;
    double alpha_floor = 0.0;
    std::size_t max_episodes = 1000;
    std::size_t max_steps_per_episode = 100000;
    std::size_t max_total_steps = 0;  // 0: unbounded
    double increment_tol = 0.0;       // stop once an episode changes psi by less than this
    bool uniform_start = false;       // start each episode at a uniformly drawn non-terminal state
};

// TD-SR under the uniform random policy over available actions.
// Terminal rows of state_sr are one-hot.
SrTraining learn_random_policy_sr(const GraphSpec& spec, const SrTrainingOptions& opt, Rng& env_rng,
                                  Rng& agent_rng);

// Uniform random walk over the graph structure, ignoring terminal flags.
std::vector<State> random_walk(const GraphSpec& spec, State start, std::size_t steps, Rng& rng);

}  // namespace neuronav
