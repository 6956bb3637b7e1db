#include "neuronav/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "neuronav/error.hpp"

namespace neuronav {

using nlohmann::json;

std::string_view policy_name(PolicyKind kind) {
    return kind == PolicyKind::Softmax ? "softmax" : "epsilon-greedy";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "softmax") return PolicyKind::Softmax;
    if (name == "epsilon-greedy") return PolicyKind::EpsilonGreedy;
    throw ConfigError("unknown policy '" + std::string(name) + "'; expected softmax or epsilon-greedy");
}

std::string_view cadence_name(PlanCadence cadence) {
    switch (cadence) {
        case PlanCadence::Episode: return "episode";
        case PlanCadence::EpisodeAndSurprise: return "episode-and-surprise";
        case PlanCadence::EveryStep: return "every-step";
    }
    return "?";
}

PlanCadence parse_cadence(std::string_view name) {
    for (auto c : {PlanCadence::Episode, PlanCadence::EpisodeAndSurprise, PlanCadence::EveryStep})
        if (cadence_name(c) == name) return c;
    throw ConfigError("unknown cadence '" + std::string(name) +
                      "'; expected episode, episode-and-surprise or every-step");
}

namespace {

// One entry per key: how to read it from JSON and how to write it back.
struct Field {
    const char* key;
    void (*read)(const json&, ExperimentConfig&);
    json (*write)(const ExperimentConfig&);
};

std::string type_name(const json& v) { return v.type_name(); }

double as_number(const json& v, const char* key) {
    if (!v.is_number()) throw ConfigError(std::string("config field '") + key + "': expected number, got " + type_name(v));
    return v.get<double>();
}

std::uint64_t as_count(const json& v, const char* key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(std::string("config field '") + key + "': expected non-negative integer, got " +
                      (v.is_number() ? v.dump() : type_name(v)));
}

std::string as_string(const json& v, const char* key) {
    if (!v.is_string()) throw ConfigError(std::string("config field '") + key + "': expected string, got " + type_name(v));
    return v.get<std::string>();
}

#define NN_NUMBER(name, member)                                                         \
    Field {                                                                             \
        name, [](const json& v, ExperimentConfig& c) { c.member = as_number(v, name); }, \
            [](const ExperimentConfig& c) { return json(c.member); }                    \
    }
#define NN_COUNT(name, member)                                                                             \
    Field {                                                                                                \
        name,                                                                                              \
            [](const json& v, ExperimentConfig& c) {                                                       \
                c.member = static_cast<decltype(c.member)>(as_count(v, name));                             \
            },                                                                                             \
            [](const ExperimentConfig& c) { return json(static_cast<std::uint64_t>(c.member)); }           \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        Field{"experiment", [](const json& v, ExperimentConfig& c) { c.experiment = parse_experiment(as_string(v, "experiment")); },
              [](const ExperimentConfig& c) { return json(std::string(experiment_name(c.experiment))); }},
        Field{"algorithm", [](const json& v, ExperimentConfig& c) { c.algorithm = parse_algorithm(as_string(v, "algorithm")); },
              [](const ExperimentConfig& c) { return json(std::string(algorithm_name(c.algorithm))); }},
        Field{"policy", [](const json& v, ExperimentConfig& c) { c.policy = parse_policy(as_string(v, "policy")); },
              [](const ExperimentConfig& c) { return json(std::string(policy_name(c.policy))); }},
        Field{"cadence", [](const json& v, ExperimentConfig& c) { c.cadence = parse_cadence(as_string(v, "cadence")); },
              [](const ExperimentConfig& c) { return json(std::string(cadence_name(c.cadence))); }},
        NN_NUMBER("alpha", hyperparams.alpha),
        NN_NUMBER("alpha_w", hyperparams.alpha_w),
        NN_NUMBER("gamma", hyperparams.gamma),
        NN_NUMBER("lambda", hyperparams.lambda),
        NN_NUMBER("beta", hyperparams.beta),
        NN_NUMBER("epsilon", hyperparams.epsilon),
        NN_COUNT("k_replay", hyperparams.k_replay),
        NN_NUMBER("vi_tol", hyperparams.vi_tol),
        NN_COUNT("vi_max_iters", hyperparams.vi_max_iters),
        NN_COUNT("n_runs", n_runs),
        NN_COUNT("n_episodes", n_episodes),
        NN_COUNT("max_steps", max_steps_per_episode),
        Field{"edit_episode",
              [](const json& v, ExperimentConfig& c) {
                  if (v.is_null()) {
                      c.edit_episode.reset();
                  } else {
                      c.edit_episode = static_cast<std::size_t>(as_count(v, "edit_episode"));
                  }
              },
              [](const ExperimentConfig& c) {
                  return c.edit_episode ? json(static_cast<std::uint64_t>(*c.edit_episode)) : json(nullptr);
              }},
        NN_COUNT("master_seed", master_seed),
        NN_COUNT("relearn_episodes", relearn_episodes),
        NN_COUNT("sr_episode_cap", sr_episode_cap),
        NN_NUMBER("sr_tol", sr_tol),
        NN_COUNT("n_place_maps", n_place_maps),
        NN_COUNT("n_components", n_components),
        NN_COUNT("hidden_dim", hidden_dim),
        NN_COUNT("walk_steps", walk_steps),
        NN_NUMBER("net_lr", net_lr),
        NN_COUNT("permutations", permutations),
        NN_COUNT("workers", workers),
    };
    return table;
}

#undef NN_NUMBER
#undef NN_COUNT

json parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    return doc;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.emplace_back(f.key);
    return keys;
}

ExperimentConfig parse_config(std::string_view text, std::span<const std::string> overrides,
                              std::optional<ExperimentKind> experiment) {
    json doc = parse_document(text);
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + o + "' is not key=value");
        const std::string key = o.substr(0, eq);
        const std::string value = o.substr(eq + 1);
        json parsed = json::parse(value, nullptr, false);
        doc[key] = parsed.is_discarded() ? json(value) : parsed;
    }

    const auto& table = fields();
    std::vector<std::string> unknown;
    for (const auto& [key, _] : doc.items()) {
        const bool known = std::any_of(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
        if (!known) unknown.push_back(key);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw ConfigError(msg);
    }

    if (doc.contains("experiment")) {
        experiment = parse_experiment(as_string(doc["experiment"], "experiment"));
    } else if (!experiment) {
        throw ConfigError("config field 'experiment' is required");
    }
    ExperimentConfig config = ExperimentConfig::defaults_for(*experiment);
    for (const auto& f : table)
        if (doc.contains(f.key)) f.read(doc[f.key], config);
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path, std::span<const std::string> overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

std::string config_to_json(const ExperimentConfig& config) {
    json doc = json::object();
    for (const auto& f : fields()) doc[f.key] = f.write(config);
    return doc.dump(2);
}

}  // namespace neuronav
