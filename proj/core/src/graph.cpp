#include "neuronav/graph.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <sstream>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::string pair_name(State s, Action a) {
    std::ostringstream os;
    os << "(state " << s << ", action " << a << ")";
    return os.str();
}

}  // namespace

std::vector<std::string> validate(const GraphSpec& spec) {
    std::vector<std::string> out;
    const auto n = spec.n_states;
    if (n == 0) out.emplace_back("n_states must be positive");
    if (spec.n_actions == 0) out.emplace_back("n_actions must be positive");
    if (spec.successors.size() != n * spec.n_actions) {
        out.emplace_back("successor table has " + std::to_string(spec.successors.size()) +
                         " entries, expected n_states * n_actions = " +
                         std::to_string(n * spec.n_actions));
        return out;
    }
    if (spec.rewards.size() != n) {
        out.emplace_back("reward table has " + std::to_string(spec.rewards.size()) +
                         " entries, expected " + std::to_string(n));
    }
    for (double r : spec.rewards) {
        if (!std::isfinite(r)) {
            out.emplace_back("reward table contains a non-finite value");
            break;
        }
    }

    for (State s = 0; s < n; ++s) {
        for (Action a = 0; a < spec.n_actions; ++a) {
            const auto& succ = spec.successors_of(s, a);
            if (succ.empty()) continue;
            double total = 0.0;
            for (const auto& [next, p] : succ) {
                if (next >= n) {
                    out.push_back(pair_name(s, a) + " references state " + std::to_string(next) +
                                  " >= n_states");
                }
                if (!(p >= 0.0) || !std::isfinite(p)) {
                    out.push_back(pair_name(s, a) + " has an invalid probability");
                }
                total += p;
            }
            if (std::abs(total - 1.0) > kProbabilityTolerance) {
                std::ostringstream os;
                os << pair_name(s, a) << " probabilities sum to " << total << ", expected 1";
                out.push_back(os.str());
            }
        }
    }

    for (State t : spec.terminals) {
        if (t >= n) out.push_back("terminal " + std::to_string(t) + " >= n_states");
    }
    if (spec.start_states.empty()) out.emplace_back("start_states is empty");
    for (State s : spec.start_states) {
        if (s >= n) {
            out.push_back("start state " + std::to_string(s) + " >= n_states");
        } else if (spec.is_terminal(s)) {
            out.push_back("start state " + std::to_string(s) + " is terminal");
        }
    }

    // Reachability is only meaningful once indices are sane.
    if (!out.empty()) return out;
    for (State s : spec.start_states) {
        const auto seen = reachable_from(spec, s);
        bool found = false;
        for (State t : spec.terminals) found = found || seen[t];
        if (!found) {
            out.push_back("no terminal is reachable from start state " + std::to_string(s));
        }
    }
    return out;
}

void require_valid(const GraphSpec& spec) {
    const auto violations = validate(spec);
    if (violations.empty()) return;
    std::string msg = "invalid graph spec:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ValidationError(msg);
}

State reset(const GraphSpec& spec, Rng& rng) {
    if (spec.start_states.empty()) throw ContractError("reset: spec has no start states");
    if (spec.start_states.size() == 1) return spec.start_states.front();
    return spec.start_states[rng.uniform_index(spec.start_states.size())];
}

Transition step(const GraphSpec& spec, State s, Action a, Rng& rng) {
    if (s >= spec.n_states) throw ContractError("step: state out of range");
    if (a >= spec.n_actions) throw ContractError("step: action out of range");
    if (spec.is_terminal(s)) {
        throw ContractError("step: state " + std::to_string(s) + " is terminal");
    }
    const auto& succ = spec.successors_of(s, a);
    if (succ.empty()) throw ContractError("step: action unavailable at " + pair_name(s, a));

    State next = succ.back().state;
    if (succ.size() > 1) {
        const double u = rng.uniform();
        double acc = 0.0;
        for (const auto& [candidate, p] : succ) {
            acc += p;
            if (u < acc) {
                next = candidate;
                break;
            }
        }
    }
    return Transition{s, a, spec.reward(next), next, spec.is_terminal(next)};
}

std::vector<char> action_mask(const GraphSpec& spec) {
    std::vector<char> mask(spec.n_states * spec.n_actions, 0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = spec.successors[i].empty() ? 0 : 1;
    return mask;
}

std::vector<char> reachable_from(const GraphSpec& spec, State from) {
    std::vector<char> seen(spec.n_states, 0);
    std::deque<State> frontier{from};
    seen[from] = 1;
    while (!frontier.empty()) {
        const State s = frontier.front();
        frontier.pop_front();
        if (spec.is_terminal(s)) continue;
        for (Action a = 0; a < spec.n_actions; ++a) {
            for (const auto& succ : spec.successors_of(s, a)) {
                if (succ.probability > 0.0 && succ.state < spec.n_states && !seen[succ.state]) {
                    seen[succ.state] = 1;
                    frontier.push_back(succ.state);
                }
            }
        }
    }
    return seen;
}

namespace {

struct Fnv1a {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void byte(unsigned char b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
};

}  // namespace

std::uint64_t spec_hash(const GraphSpec& spec) {
    Fnv1a f;
    f.u64(spec.n_states);
    f.u64(spec.n_actions);
    for (const auto& list : spec.successors) {
        f.u64(list.size());
        for (const auto& [s, p] : list) {
            f.u64(s);
            f.f64(p);
        }
    }
    f.u64(spec.rewards.size());
    for (double r : spec.rewards) f.f64(r);
    f.u64(spec.terminals.size());
    for (State t : spec.terminals) f.u64(t);
    f.u64(spec.start_states.size());
    for (State s : spec.start_states) f.u64(s);
    f.byte(spec.maze ? 1 : 0);
    if (spec.maze) {
        const auto& m = spec.maze->maze;
        f.i64(m.width);
        f.i64(m.height);
        f.u64(m.walls.size());
        for (const auto& c : m.walls) {
            f.i64(c.x);
            f.i64(c.y);
        }
        f.i64(m.start.x);
        f.i64(m.start.y);
        f.i64(m.goal.x);
        f.i64(m.goal.y);
        f.f64(m.goal_reward);
    }
    return f.h;
}

}  // namespace neuronav
