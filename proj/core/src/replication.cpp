#include "neuronav/replication.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace neuronav {

std::vector<Algorithm> replication_algorithms(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Revaluation:
        case ExperimentKind::TransferReward:
        case ExperimentKind::TransferStructure: {
            const auto all = all_algorithms();
            return {all.begin(), all.end()};
        }
        case ExperimentKind::PlaceGrid:
        case ExperimentKind::Community: return {Algorithm::TdSr};
    }
    return {};
}

std::vector<ExperimentConfig> replication_configs(ExperimentKind kind, std::uint64_t seed) {
    std::vector<ExperimentConfig> configs;
    for (auto alg : replication_algorithms(kind)) {
        auto c = ExperimentConfig::defaults_for(kind);
        c.algorithm = alg;
        c.master_seed = seed;
        configs.push_back(c);
    }
    return configs;
}

std::vector<ExperimentResult> run_replication(std::span<const ExperimentConfig> configs) {
    std::vector<ExperimentResult> results;
    for (const auto& c : configs) results.push_back(run_experiment(c));
    return results;
}

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

const ExperimentResult* find(std::span<const ExperimentResult> results, Algorithm alg) {
    const auto it = std::find_if(results.begin(), results.end(), [&](const auto& r) { return r.algorithm == alg; });
    return it == results.end() ? nullptr : &*it;
}

double get(const ExperimentResult& r, const std::string& key) {
    const auto it = r.summary.find(key);
    return it == r.summary.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

template <class Fn>
void check(std::vector<CheckResult>& out, std::span<const ExperimentResult> results, Algorithm alg,
           const std::string& claim, Fn fn) {
    const std::string name = std::string(algorithm_name(alg)) + ": " + claim;
    if (const auto* r = find(results, alg)) {
        auto [passed, detail] = fn(*r);
        out.push_back({name, passed, detail});
    } else {
        out.push_back({name, false, "missing"});
    }
}

}  // namespace

std::vector<CheckResult> replication_checks(ExperimentKind kind, std::span<const ExperimentResult> results) {
    std::vector<CheckResult> out;
    switch (kind) {
        case ExperimentKind::Revaluation: {
            auto scores = [](const ExperimentResult& r) {
                return std::pair{get(r, "mean_reward_score"), get(r, "mean_transition_score")};
            };
            for (auto alg : {Algorithm::DynaSr, Algorithm::Mbsr}) {
                check(out, results, alg, "reward revaluation exceeds transition revaluation by > 0.1",
                      [&](const auto& r) {
                          const auto [rw, tr] = scores(r);
                          return std::pair{rw > tr + 0.1, fmt("reward %.3f, transition %.3f", rw, tr)};
                      });
            }
            check(out, results, Algorithm::Mbv, "both revaluation scores > 0.2", [&](const auto& r) {
                const auto [rw, tr] = scores(r);
                return std::pair{rw > 0.2 && tr > 0.2, fmt("reward %.3f, transition %.3f", rw, tr)};
            });
            check(out, results, Algorithm::TdQ, "both revaluation scores within [-0.05, 0.05]", [&](const auto& r) {
                const auto [rw, tr] = scores(r);
                const bool ok = std::abs(rw) <= 0.05 && std::abs(tr) <= 0.05;
                return std::pair{ok, fmt("reward %.3f, transition %.3f", rw, tr)};
            });
            break;
        }
        case ExperimentKind::TransferReward:
        case ExperimentKind::TransferStructure: {
            auto ratio = [](const ExperimentResult& r) {
                const double pre = get(r, "pre_edit_mean_steps"), post = get(r, "post_edit_mean_steps");
                return std::pair{post <= 1.5 * pre, fmt("pre %.2f, post %.2f, ratio %.3f", pre, post, post / pre)};
            };
            auto adapts = [&](Algorithm alg) {
                check(out, results, alg, "post-edit steps <= 1.5x pre-edit", ratio);
            };
            auto fails = [&](Algorithm alg) {
                check(out, results, alg, "post-edit steps > 1.5x pre-edit", [&](const auto& r) {
                    auto [ok, detail] = ratio(r);
                    return std::pair{!ok, detail};
                });
            };
            if (kind == ExperimentKind::TransferReward) {
                adapts(Algorithm::DynaSr);
                adapts(Algorithm::Mbv);
                fails(Algorithm::TdQ);
            } else {
                adapts(Algorithm::Mbv);
                fails(Algorithm::DynaSr);
            }
            break;
        }
        case ExperimentKind::PlaceGrid:
            check(out, results, Algorithm::TdSr, ">= 90% of place maps peak at or next to their own cell, all >= 0",
                  [&](const auto& r) {
                      const double frac = get(r, "place_peak_fraction"), lo = get(r, "place_min_value");
                      return std::pair{frac >= 0.9 && lo >= 0.0, fmt("peak fraction %.3f, min value %.3g", frac, lo)};
                  });
            break;
        case ExperimentKind::Community:
            if (results.empty()) {
                out.push_back({"community separation", false, "missing"});
                break;
            }
            {
                const auto& r = results.front();
                const double hidden = get(r, "separation_hidden"), onehot = get(r, "separation_onehot"),
                             p95 = get(r, "null_p95");
                out.push_back({"hidden separation > one-hot separation + 0.1", hidden > onehot + 0.1,
                               fmt("hidden %.4f, one-hot %.4f", hidden, onehot)});
                out.push_back({"hidden separation > 95th percentile of label permutations", hidden > p95,
                               fmt("hidden %.4f, permutation p95 %.4f", hidden, p95)});
            }
            break;
    }
    return out;
}

}  // namespace neuronav
