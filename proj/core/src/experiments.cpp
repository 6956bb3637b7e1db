#include "neuronav/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "neuronav/error.hpp"
#include "neuronav/pca.hpp"
#include "neuronav/predictive_net.hpp"
#include "neuronav/presets.hpp"
#include "neuronav/separation.hpp"

namespace neuronav {

std::string_view experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Revaluation: return "revaluation";
        case ExperimentKind::TransferReward: return "transfer-reward";
        case ExperimentKind::TransferStructure: return "transfer-structure";
        case ExperimentKind::PlaceGrid: return "place-grid";
        case ExperimentKind::Community: return "community";
    }
    return "?";
}

std::vector<ExperimentKind> all_experiments() {
    return {ExperimentKind::Revaluation, ExperimentKind::TransferReward, ExperimentKind::TransferStructure,
            ExperimentKind::PlaceGrid, ExperimentKind::Community};
}

ExperimentKind parse_experiment(std::string_view name) {
    for (auto k : all_experiments())
        if (experiment_name(k) == name) return k;
    throw ConfigError("unknown experiment '" + std::string(name) +
                      "'; expected revaluation, transfer-reward, transfer-structure, place-grid or community");
}

ExperimentConfig ExperimentConfig::defaults_for(ExperimentKind kind) {
    ExperimentConfig c;
    c.experiment = kind;
    switch (kind) {
        case ExperimentKind::Revaluation:
            c.algorithm = Algorithm::Mbsr;
            c.n_runs = 10;
            c.n_episodes = 50;
            c.max_steps_per_episode = 100;
            break;
        case ExperimentKind::TransferReward:
            c.algorithm = Algorithm::DynaSr;
            c.hyperparams.alpha = 0.3;
            c.n_runs = 5;
            c.n_episodes = 100;
            c.edit_episode = 75;
            break;
        case ExperimentKind::TransferStructure:
            c.algorithm = Algorithm::Mbv;
            c.hyperparams.alpha = 0.3;
            c.n_runs = 5;
            c.n_episodes = 100;
            c.edit_episode = 50;
            break;
        case ExperimentKind::PlaceGrid:
            c.algorithm = Algorithm::TdSr;
            c.n_runs = 1;
            c.n_episodes = 3000;
            c.max_steps_per_episode = 100000;
            break;
        case ExperimentKind::Community:
            c.algorithm = Algorithm::TdSr;
            c.n_runs = 1;
            c.n_episodes = 1;
            break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    hyperparams.validate();
    if (n_runs < 1) throw ConfigError("config field 'n_runs' must be >= 1");
    if (n_episodes < 1) throw ConfigError("config field 'n_episodes' must be >= 1");
    if (max_steps_per_episode < 1) throw ConfigError("config field 'max_steps' must be >= 1");
    if (edit_episode && (*edit_episode < 1 || *edit_episode >= n_episodes)) {
        throw ConfigError("config field 'edit_episode' must be in [1, n_episodes)");
    }
    if (!(sr_tol >= 0.0)) throw ConfigError("config field 'sr_tol' must be >= 0");
    if (hidden_dim < 1) throw ConfigError("config field 'hidden_dim' must be >= 1");
    if (walk_steps < 2) throw ConfigError("config field 'walk_steps' must be >= 2");
    if (!(net_lr >= 0.0) || !std::isfinite(net_lr)) throw ConfigError("config field 'net_lr' must be >= 0");
}

namespace {

struct RunStreams {
    Rng env;
    Rng agent;
    Rng experiment;
};

RunStreams streams_for(std::uint64_t master_seed, std::size_t run) {
    const Rng base = Rng(master_seed).split(run);
    return {base.split(streams::environment), base.split(streams::agent), base.split(streams::experiment)};
}

// Runs fn(i) for i in [0, n) on a bounded pool; each index owns its output slot.
void parallel_runs(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < n; i = next++) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Agent make_agent(const ExperimentConfig& c, const GraphSpec& spec) {
    return Agent(c.algorithm, spec.n_states, spec.n_actions, c.hyperparams, c.policy, c.cadence);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

EpisodeOutcome run_episode(Agent& agent, const GraphSpec& spec, std::size_t max_steps, Rng& env_rng,
                           Rng& agent_rng, std::optional<State> start) {
    agent.set_action_mask(action_mask(spec));
    agent.begin_episode();
    EpisodeOutcome out;
    State s = start ? *start : reset(spec, env_rng);
    if (spec.is_terminal(s)) throw ContractError("run_episode: start state is terminal");
    Action a = agent.select_action(s, agent_rng);
    while (out.steps < max_steps) {
        const Transition t = step(spec, s, a, env_rng);
        ++out.steps;
        out.ret += t.r;
        out.trajectory.push_back(t);
        std::optional<Action> a_next;
        if (!t.done && agent.needs_next_action()) a_next = agent.select_action(t.s_next, agent_rng);
        agent.learn(t, a_next, agent_rng);
        if (t.done) {
            out.done = true;
            break;
        }
        a = a_next ? *a_next : agent.select_action(t.s_next, agent_rng);
        s = t.s_next;
    }
    return out;
}

double compute_revaluation_score(std::span<const double> p_pre, std::span<const double> p_post, Action a_star) {
    auto check = [](std::span<const double> p, const char* which) {
        double total = 0.0;
        for (double x : p) {
            if (!(x >= 0.0 && x <= 1.0)) throw ContractError(std::string(which) + " is not a distribution");
            total += x;
        }
        if (std::abs(total - 1.0) > 1e-9) throw ContractError(std::string(which) + " does not sum to 1");
    };
    check(p_pre, "p_pre");
    check(p_post, "p_post");
    if (p_pre.size() != p_post.size() || a_star >= p_pre.size()) {
        throw ContractError("revaluation score: mismatched distributions or action");
    }
    return p_post[a_star] - p_pre[a_star];
}

std::string_view condition_name(RevaluationCondition c) {
    return c == RevaluationCondition::Reward ? "reward" : "transition";
}

std::vector<double> exact_q_values(const GraphSpec& spec, double gamma) {
    const std::size_t S = spec.n_states, A = spec.n_actions;
    std::vector<double> q(S * A, 0.0), v(S, 0.0);
    for (int it = 0; it < 100000; ++it) {
        for (State s = 0; s < S; ++s) {
            double best = -INFINITY;
            for (Action a = 0; a < A; ++a)
                if (spec.available(s, a)) best = std::max(best, q[s * A + a]);
            v[s] = (spec.is_terminal(s) || !std::isfinite(best)) ? 0.0 : best;
        }
        double change = 0.0;
        for (State s = 0; s < S; ++s) {
            for (Action a = 0; a < A; ++a) {
                double target = 0.0;
                for (const auto& [next, p] : spec.successors_of(s, a))
                    target += p * (spec.reward(next) + gamma * v[next]);
                change = std::max(change, std::abs(target - q[s * A + a]));
                q[s * A + a] = target;
            }
        }
        if (change < 1e-12) break;
    }
    return q;
}

ExperimentResult run_revaluation(const ExperimentConfig& config) {
    config.validate();
    using namespace revaluation;
    const GraphSpec base = load_preset("revaluation_graph").spec;
    const std::array conditions = {RevaluationCondition::Reward, RevaluationCondition::Transition};

    ExperimentResult result;
    result.experiment = config.experiment;
    result.algorithm = config.algorithm;
    result.seed = config.master_seed;
    result.metric_columns = {"condition", "p_pre", "p_post", "a_star", "score"};

    std::vector<std::array<Record, 2>> per_run(config.n_runs);
    std::optional<AgentState> snapshot;
    parallel_runs(config.n_runs, config.workers, [&](std::size_t run) {
        for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
            const auto cond = conditions[ci];
            // Both conditions share the learning phase of a run.
            RunStreams rs = streams_for(config.master_seed, run);
            Agent agent = make_agent(config, base);
            std::size_t steps = 0;
            double ret = 0.0;
            for (std::size_t ep = 0; ep < config.n_episodes; ++ep) {
                const auto o = run_episode(agent, base, config.max_steps_per_episode, rs.env, rs.agent, start);
                steps += o.steps;
                ret += o.ret;
            }
            agent.set_action_mask(action_mask(base));
            agent.plan();
            const auto p_pre = softmax_policy(agent.action_values(start), config.hyperparams.beta,
                                              agent.state().available_row(start));

            std::vector<EnvironmentEdit> edits;
            if (cond == RevaluationCondition::Reward) {
                edits = {SwapRewards{high_terminal, low_terminal}};
            } else {
                edits = {RewireAction{left, proceed, low_terminal}, RewireAction{right, proceed, high_terminal}};
            }
            const GraphSpec edited = apply_edits(base, edits);
            for (std::size_t ep = 0; ep < config.relearn_episodes; ++ep) {
                const State s0 = ep % 2 == 0 ? left : right;
                const auto o = run_episode(agent, edited, config.max_steps_per_episode, rs.env, rs.agent, s0);
                steps += o.steps;
                ret += o.ret;
            }
            agent.set_action_mask(action_mask(edited));
            agent.plan();
            const auto p_post = softmax_policy(agent.action_values(start), config.hyperparams.beta,
                                               agent.state().available_row(start));
            const auto q_star = exact_q_values(edited, config.hyperparams.gamma);
            const Action a_star =
                greedy_action(std::span<const double>(q_star.data() + start * edited.n_actions, edited.n_actions),
                              std::span<const char>(action_mask(edited).data() + start * edited.n_actions,
                                                    edited.n_actions));
            const double score = compute_revaluation_score(p_pre, p_post, a_star);
            if (run == 0 && ci + 1 == conditions.size()) snapshot = agent.state();
            per_run[run][ci] = Record{run, config.n_episodes + config.relearn_episodes, steps, ret,
                                      {std::string(condition_name(cond)), p_pre[a_star], p_post[a_star],
                                       static_cast<double>(a_star), score}};
        }
    });

    std::array<std::vector<double>, 2> scores;
    for (const auto& pair : per_run) {
        for (std::size_t ci = 0; ci < 2; ++ci) {
            result.records.push_back(pair[ci]);
            scores[ci].push_back(std::get<double>(pair[ci].extras[4]));
        }
    }
    result.snapshot = std::move(snapshot);
    result.summary["mean_reward_score"] = mean(scores[0]);
    result.summary["mean_transition_score"] = mean(scores[1]);
    result.summary["n_runs"] = static_cast<double>(config.n_runs);
    return result;
}

TransferWindows transfer_windows(std::size_t edit_episode) {
    const std::size_t pre_first = edit_episode > 15 ? edit_episode - 15 : 1;
    return {pre_first, edit_episode - 1, edit_episode + 15, edit_episode + 25};
}

ExperimentResult run_transfer(const ExperimentConfig& config) {
    config.validate();
    const bool reward = config.experiment == ExperimentKind::TransferReward;
    if (!reward && config.experiment != ExperimentKind::TransferStructure) {
        throw ConfigError("run_transfer: experiment must be transfer-reward or transfer-structure");
    }
    const Preset preset = load_preset(reward ? "transfer_maze_reward" : "transfer_maze_structure");
    // The agent keeps its tables across the edit, so states are indexed by cell.
    const GraphSpec before = grid_indexed(preset.spec);
    const GraphSpec edited = grid_indexed(apply_edits(preset.spec, preset.metadata.scripted_edits));

    ExperimentResult result;
    result.experiment = config.experiment;
    result.algorithm = config.algorithm;
    result.seed = config.master_seed;
    result.metric_columns = {"done", "spec_hash"};

    std::vector<std::vector<Record>> per_run(config.n_runs);
    std::optional<AgentState> snapshot;
    parallel_runs(config.n_runs, config.workers, [&](std::size_t run) {
        RunStreams rs = streams_for(config.master_seed, run);
        Agent agent = make_agent(config, before);
        const GraphSpec* spec = &before;
        for (std::size_t ep = 1; ep <= config.n_episodes; ++ep) {
            if (config.edit_episode && ep == *config.edit_episode) spec = &edited;
            const auto o = run_episode(agent, *spec, config.max_steps_per_episode, rs.env, rs.agent);
            per_run[run].push_back(
                Record{run, ep, o.steps, o.ret, {o.done ? 1.0 : 0.0, hex64(spec_hash(*spec))}});
        }
        if (run == 0) snapshot = agent.state();
    });
    result.snapshot = std::move(snapshot);

    std::vector<double> mean_steps(config.n_episodes, 0.0);
    for (auto& records : per_run) {
        for (auto& r : records) {
            mean_steps[r.episode - 1] += static_cast<double>(r.steps) / static_cast<double>(config.n_runs);
            result.records.push_back(std::move(r));
        }
    }
    Matrix curve(1, config.n_episodes);
    for (std::size_t i = 0; i < config.n_episodes; ++i) curve(0, i) = mean_steps[i];
    result.point_sets["mean_steps"] = curve;

    if (config.edit_episode) {
        const auto w = transfer_windows(*config.edit_episode);
        auto window_mean = [&](std::size_t first, std::size_t last) {
            last = std::min(last, config.n_episodes);
            if (first > last) return std::numeric_limits<double>::quiet_NaN();
            double s = 0.0;
            for (std::size_t e = first; e <= last; ++e) s += mean_steps[e - 1];
            return s / static_cast<double>(last - first + 1);
        };
        const double pre = window_mean(w.pre_first, w.pre_last);
        const double post = window_mean(w.post_first, w.post_last);
        result.summary["edit_episode"] = static_cast<double>(*config.edit_episode);
        result.summary["pre_edit_mean_steps"] = pre;
        result.summary["post_edit_mean_steps"] = post;
        result.summary["post_to_pre_ratio"] = post / pre;
        result.summary["adapted"] = post <= 1.5 * pre ? 1.0 : 0.0;
    }
    result.summary["n_runs"] = static_cast<double>(config.n_runs);
    return result;
}

SrTraining learn_random_policy_sr(const GraphSpec& spec, const SrTrainingOptions& opt, Rng& env_rng,
                                  Rng& agent_rng) {
    const std::size_t S = spec.n_states, A = spec.n_actions;
    AgentState st(S, A);
    st.available = action_mask(spec);
    std::vector<std::int64_t> visits(S * A, 0);
    Hyperparams hp;
    hp.gamma = opt.gamma;

    std::vector<State> starts;
    for (State s = 0; s < S; ++s)
        if (!spec.is_terminal(s)) starts.push_back(s);

    auto random_action = [&](State s) {
        const auto avail = st.available_row(s);
        std::size_t count = 0;
        for (char c : avail) count += c ? 1 : 0;
        std::size_t pick = agent_rng.uniform_index(count);
        for (Action a = 0; a < A; ++a)
            if (avail[a] && pick-- == 0) return a;
        return Action{0};
    };

    SrTraining out;
    std::vector<double> before;
    for (std::size_t ep = 0; ep < opt.max_episodes; ++ep) {
        if (opt.max_total_steps && out.steps >= opt.max_total_steps) break;
        before = st.psi;
        State s = opt.uniform_start ? starts[env_rng.uniform_index(starts.size())] : reset(spec, env_rng);
        Action a = random_action(s);
        for (std::size_t k = 0; k < opt.max_steps_per_episode; ++k) {
            const Transition t = step(spec, s, a, env_rng);
            ++out.steps;
            const Action a_next = t.done ? 0 : random_action(t.s_next);
            const auto n = ++visits[st.sa(t.s, t.a)];
            hp.alpha = opt.alpha_decay > 0.0
                           ? std::max(opt.alpha_floor, opt.alpha * opt.alpha_decay /
                                                           (opt.alpha_decay + static_cast<double>(n - 1)))
                           : opt.alpha;
            td_sr_psi_update(st, t, a_next, hp);
            if (t.done) break;
            s = t.s_next;
            a = a_next;
        }
        ++out.episodes;
        double inc = 0.0;
        for (std::size_t i = 0; i < st.psi.size(); ++i) inc = std::max(inc, std::abs(st.psi[i] - before[i]));
        out.increments.push_back(inc);
        if (opt.increment_tol > 0.0 && inc < opt.increment_tol) break;
    }

    out.state_sr.assign(S * S, 0.0);
    for (State s = 0; s < S; ++s) {
        double* row = out.state_sr.data() + s * S;
        if (spec.is_terminal(s)) {
            row[s] = 1.0;
            continue;
        }
        std::size_t count = 0;
        for (Action a = 0; a < A; ++a) {
            if (!spec.available(s, a)) continue;
            ++count;
            const auto psi = st.psi_row(s, a);
            for (std::size_t j = 0; j < S; ++j) row[j] += psi[j];
        }
        for (std::size_t j = 0; j < S && count; ++j) row[j] /= static_cast<double>(count);
    }
    return out;
}

namespace {

Matrix to_grid(const MazeProvenance& maze, std::span<const double> per_state) {
    Matrix grid(static_cast<std::size_t>(maze.maze.height), static_cast<std::size_t>(maze.maze.width));
    for (State s = 0; s < maze.cells.size(); ++s) {
        grid(static_cast<std::size_t>(maze.cells[s].y), static_cast<std::size_t>(maze.cells[s].x)) = per_state[s];
    }
    return grid;
}

std::string padded(std::size_t i, int width = 3) {
    std::string s = std::to_string(i);
    return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
}

}  // namespace

ExperimentResult run_place_grid(const ExperimentConfig& config) {
    config.validate();
    const Preset preset = load_preset("open_field");
    const GraphSpec& spec = preset.spec;
    const auto& maze = *spec.maze;
    const std::size_t S = spec.n_states;

    ExperimentResult result;
    result.experiment = config.experiment;
    result.algorithm = Algorithm::TdSr;
    result.seed = config.master_seed;
    result.metric_columns = {"sr_increment"};

    // Runs are averaged into one SR matrix.
    std::vector<SrTraining> runs(config.n_runs);
    parallel_runs(config.n_runs, config.workers, [&](std::size_t run) {
        RunStreams rs = streams_for(config.master_seed, run);
        SrTrainingOptions opt;
        opt.gamma = config.hyperparams.gamma;
        opt.alpha = config.hyperparams.alpha;
        opt.max_episodes = std::min(config.n_episodes, config.sr_episode_cap);
        opt.max_steps_per_episode = config.max_steps_per_episode;
        opt.increment_tol = config.sr_tol;
        runs[run] = learn_random_policy_sr(spec, opt, rs.env, rs.agent);
    });

    Matrix sr(S, S);
    for (std::size_t run = 0; run < config.n_runs; ++run) {
        const auto& tr = runs[run];
        for (std::size_t i = 0; i < S * S; ++i) sr.data()[i] += tr.state_sr[i] / static_cast<double>(config.n_runs);
        for (std::size_t ep = 0; ep < tr.episodes; ++ep) {
            result.records.push_back(Record{run, ep + 1, 0, 0.0, {tr.increments[ep]}});
        }
    }
    for (std::size_t run = 0; run < config.n_runs; ++run) {
        result.summary["sr_steps_run_" + std::to_string(run)] = static_cast<double>(runs[run].steps);
    }

    // Place maps: column j of the SR over all cells.
    std::size_t peaked = 0;
    double min_value = INFINITY;
    std::vector<double> column(S);
    for (State j = 0; j < S; ++j) {
        std::size_t arg = 0;
        for (State s = 0; s < S; ++s) {
            column[s] = sr(s, j);
            min_value = std::min(min_value, column[s]);
            if (column[s] > column[arg]) arg = s;
        }
        const Cell peak = maze.cells[arg];
        const Cell own = maze.cells[j];
        if (std::abs(peak.x - own.x) + std::abs(peak.y - own.y) <= 1) ++peaked;
    }
    result.summary["place_peak_fraction"] = static_cast<double>(peaked) / static_cast<double>(S);
    result.summary["place_min_value"] = min_value;

    const std::size_t n_maps = std::min(config.n_place_maps, S);
    for (std::size_t k = 0; k < n_maps; ++k) {
        const State j = n_maps == 1 ? 0 : k * (S - 1) / (n_maps - 1);
        for (State s = 0; s < S; ++s) column[s] = sr(s, j);
        result.field_maps["place_" + padded(j)] = to_grid(maze, column);
    }

    const std::size_t k = std::min(config.n_components, S);
    if (k > 0) {
        const auto p = pca(sr, k);
        for (std::size_t c = 0; c < k; ++c) {
            result.field_maps["grid_pc" + padded(c + 1, 2)] = to_grid(maze, p.components.row(c));
            result.summary["eigenvalue_" + std::to_string(c + 1)] = p.eigenvalues[c];
        }
        std::size_t positive = 0;
        for (double x : p.components.row(0)) positive += x >= 0.0 ? 1 : 0;
        result.summary["pc1_positive_fraction"] = static_cast<double>(positive) / static_cast<double>(S);
    }
    result.point_sets["state_sr"] = sr;
    result.summary["n_runs"] = static_cast<double>(config.n_runs);
    return result;
}

std::vector<State> random_walk(const GraphSpec& spec, State start, std::size_t steps, Rng& rng) {
    std::vector<State> walk{start};
    walk.reserve(steps + 1);
    State s = start;
    std::vector<Action> avail;
    for (std::size_t i = 0; i < steps; ++i) {
        avail.clear();
        for (Action a = 0; a < spec.n_actions; ++a)
            if (spec.available(s, a)) avail.push_back(a);
        if (avail.empty()) throw ContractError("random_walk: state has no available actions");
        const auto& succ = spec.successors_of(s, avail[rng.uniform_index(avail.size())]);
        State next = succ.back().state;
        if (succ.size() > 1) {
            const double u = rng.uniform();
            double acc = 0.0;
            for (const auto& [cand, p] : succ) {
                acc += p;
                if (u < acc) {
                    next = cand;
                    break;
                }
            }
        }
        walk.push_back(next);
        s = next;
    }
    return walk;
}

ExperimentResult run_community(const ExperimentConfig& config) {
    config.validate();
    const Preset preset = load_preset("community_graph");
    const GraphSpec& spec = preset.spec;
    const auto& labels = *preset.metadata.community_labels;
    const std::size_t S = spec.n_states;

    ExperimentResult result;
    result.experiment = config.experiment;
    result.algorithm = config.algorithm;
    result.seed = config.master_seed;
    result.metric_columns = {"final_loss", "separation_onehot", "separation_hidden", "null_p95", "p_value"};

    struct RunOut {
        Matrix hidden;
        double final_loss = 0.0;
        PermutationTest test;
        double onehot_score = 0.0;
    };
    std::vector<RunOut> outs(config.n_runs);
    const Matrix onehot = Matrix::identity(S);

    parallel_runs(config.n_runs, config.workers, [&](std::size_t run) {
        RunStreams rs = streams_for(config.master_seed, run);
        const auto walk = random_walk(spec, reset(spec, rs.env), config.walk_steps, rs.env);
        PredictiveNet net = PredictiveNet::init(S, config.hidden_dim, rs.agent);
        std::vector<double> x(S, 0.0);
        double tail_loss = 0.0;
        const std::size_t tail = std::min<std::size_t>(1000, config.walk_steps);
        for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
            x[walk[t]] = 1.0;
            const double loss = net_train_step(net, x, walk[t + 1], config.net_lr);
            x[walk[t]] = 0.0;
            if (t + tail >= config.walk_steps) tail_loss += loss;
        }
        RunOut& o = outs[run];
        o.final_loss = tail_loss / static_cast<double>(tail);
        o.hidden = Matrix(S, config.hidden_dim);
        for (State s = 0; s < S; ++s) {
            x[s] = 1.0;
            const auto fwd = net_forward(net, x);
            x[s] = 0.0;
            std::copy(fwd.hidden.begin(), fwd.hidden.end(), o.hidden.row(s).begin());
        }
        o.test = permutation_test(o.hidden, labels, config.permutations, rs.experiment);
        o.onehot_score = separation_score(onehot, labels);
    });

    std::vector<double> hidden_scores, onehot_scores, p95;
    for (std::size_t run = 0; run < config.n_runs; ++run) {
        const auto& o = outs[run];
        result.records.push_back(Record{run, 1, config.walk_steps, 0.0,
                                        {o.final_loss, o.onehot_score, o.test.observed, o.test.percentile_95,
                                         o.test.p_value}});
        hidden_scores.push_back(o.test.observed);
        onehot_scores.push_back(o.onehot_score);
        p95.push_back(o.test.percentile_95);
    }
    result.summary["separation_hidden"] = mean(hidden_scores);
    result.summary["separation_onehot"] = mean(onehot_scores);
    result.summary["null_p95"] = mean(p95);
    result.summary["n_runs"] = static_cast<double>(config.n_runs);

    const std::vector<int> label_vec(labels.begin(), labels.end());
    result.point_sets["onehot_2d"] = pca(onehot, 2).projected;
    result.point_sets["hidden_2d"] = pca(outs.front().hidden, 2).projected;
    result.summary["separation_onehot_2d"] = separation_score(result.point_sets["onehot_2d"], labels);
    result.summary["separation_hidden_2d"] = separation_score(result.point_sets["hidden_2d"], labels);
    result.point_labels["onehot_2d"] = label_vec;
    result.point_labels["hidden_2d"] = label_vec;
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
        case ExperimentKind::Revaluation: return run_revaluation(config);
        case ExperimentKind::TransferReward:
        case ExperimentKind::TransferStructure: return run_transfer(config);
        case ExperimentKind::PlaceGrid: return run_place_grid(config);
        case ExperimentKind::Community: return run_community(config);
    }
    throw ConfigError("unknown experiment");
}

}  // namespace neuronav
