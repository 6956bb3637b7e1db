#include "neuronav/agent.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

constexpr std::array kAlgorithms = {Algorithm::TdQ,  Algorithm::TdSr,   Algorithm::TdAc,
                                    Algorithm::DynaQ, Algorithm::DynaSr, Algorithm::DynaAc,
                                    Algorithm::Mbv,  Algorithm::Mbsr,   Algorithm::Qet};

std::string fold(std::string_view s) {
    std::string out;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::TdQ: return "TD-Q";
        case Algorithm::TdSr: return "TD-SR";
        case Algorithm::TdAc: return "TD-AC";
        case Algorithm::DynaQ: return "Dyna-Q";
        case Algorithm::DynaSr: return "Dyna-SR";
        case Algorithm::DynaAc: return "Dyna-AC";
        case Algorithm::Mbv: return "MBV";
        case Algorithm::Mbsr: return "MBSR";
        case Algorithm::Qet: return "QET";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    const auto key = fold(name);
    for (Algorithm a : kAlgorithms)
        if (fold(algorithm_name(a)) == key) return a;
    std::string msg = "unknown algorithm '" + std::string(name) + "'; expected one of:";
    for (Algorithm a : kAlgorithms) msg += " " + std::string(algorithm_name(a));
    throw ConfigError(msg);
}

std::span<const Algorithm> all_algorithms() { return kAlgorithms; }

bool is_model_based(Algorithm alg) { return alg == Algorithm::Mbv || alg == Algorithm::Mbsr; }

bool uses_sr(Algorithm alg) {
    return alg == Algorithm::TdSr || alg == Algorithm::DynaSr || alg == Algorithm::Mbsr;
}

Action select_action(std::span<const double> values, PolicyKind kind, const Hyperparams& hp,
                     std::span<const char> available, Rng& rng) {
    if (kind == PolicyKind::EpsilonGreedy) return epsilon_greedy(values, hp.epsilon, available, rng);
    const auto probs = softmax_policy(values, hp.beta, available);
    return sample_action(probs, rng);
}

Agent::Agent(Algorithm alg, std::size_t n_states, std::size_t n_actions, Hyperparams hp, PolicyKind policy,
             PlanCadence cadence)
    : alg_(alg), hp_(hp), policy_(policy), cadence_(cadence), state_(n_states, n_actions) {
    hp_.validate();
}

void Agent::set_action_mask(std::vector<char> mask) {
    if (mask.size() != state_.available.size()) throw ContractError("action mask has the wrong size");
    state_.available = std::move(mask);
}

std::vector<double> Agent::action_values(State s) const {
    const std::size_t A = state_.n_actions();
    std::vector<double> values(A);
    switch (alg_) {
        case Algorithm::TdSr:
        case Algorithm::DynaSr:
        case Algorithm::Mbsr:
            for (Action a = 0; a < A; ++a) values[a] = state_.sr_value(s, a);
            break;
        case Algorithm::TdAc:
        case Algorithm::DynaAc:
            std::copy_n(state_.h.begin() + static_cast<std::ptrdiff_t>(s * A), A, values.begin());
            break;
        default:
            std::copy_n(state_.q.begin() + static_cast<std::ptrdiff_t>(s * A), A, values.begin());
            break;
    }
    return values;
}

Action Agent::select_action(State s, Rng& rng) const {
    const auto values = action_values(s);
    return neuronav::select_action(values, policy_, hp_, state_.available_row(s), rng);
}

bool Agent::needs_next_action() const noexcept {
    return alg_ == Algorithm::TdSr || alg_ == Algorithm::DynaSr;
}

void Agent::begin_episode() {
    if (alg_ == Algorithm::Qet) std::fill(state_.e.begin(), state_.e.end(), 0.0);
    if (is_model_based(alg_)) plan();
}

void Agent::plan() {
    if (alg_ == Algorithm::Mbv) mbv_plan(state_, hp_);
    else if (alg_ == Algorithm::Mbsr) mbsr_plan(state_, hp_);
    else return;
    ++plans_;
}

void Agent::learn(const Transition& t, std::optional<Action> a_next, Rng& rng) {
    auto next_action = [&] {
        if (t.done) return Action{0};
        if (!a_next) throw ContractError("SR update requires the next action");
        return *a_next;
    };
    switch (alg_) {
        case Algorithm::TdQ: td_q_update(state_, t, hp_); break;
        case Algorithm::TdSr: td_sr_update(state_, t, next_action(), hp_); break;
        case Algorithm::TdAc: td_ac_update(state_, t, hp_); break;
        case Algorithm::Qet: qet_update(state_, t, hp_); break;
        case Algorithm::DynaQ:
            td_q_update(state_, t, hp_);
            state_.buffer.push_back(t);
            dyna_replay(state_, ReplayRule::TdQ, hp_, rng);
            break;
        case Algorithm::DynaSr:
            td_sr_update(state_, t, next_action(), hp_);
            state_.buffer.push_back(t);
            dyna_replay(state_, ReplayRule::TdSr, hp_, rng);
            break;
        case Algorithm::DynaAc:
            td_ac_update(state_, t, hp_);
            state_.buffer.push_back(t);
            dyna_replay(state_, ReplayRule::TdAc, hp_, rng);
            break;
        case Algorithm::Mbv: {
            const bool surprise = mbv_learn(state_, t, hp_);
            if (cadence_ == PlanCadence::EveryStep ||
                (cadence_ == PlanCadence::EpisodeAndSurprise && surprise)) {
                plan();
            }
            break;
        }
        case Algorithm::Mbsr: {
            bool surprise = mbv_learn(state_, t, hp_);
            const double w_err = omega_update(state_, t, hp_);
            surprise = surprise || std::abs(w_err) > 1e-6 * std::max(1.0, std::abs(t.r));
            if (cadence_ == PlanCadence::EveryStep ||
                (cadence_ == PlanCadence::EpisodeAndSurprise && surprise)) {
                plan();
            }
            break;
        }
    }
}

}  // namespace neuronav
