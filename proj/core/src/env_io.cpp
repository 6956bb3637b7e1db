#include "neuronav/env_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "neuronav/error.hpp"

namespace neuronav {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
    std::string unknown;
    for (const auto& [key, _] : doc.items()) {
        if (!allowed.contains(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) throw ValidationError("environment: unknown keys: " + unknown);
}

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ValidationError(std::string("environment: missing field '") + key + "'");
    return doc.at(key);
}

GraphSpec parse_maze(const json& doc) {
    reject_unknown_keys(doc, {"type", "layout", "goal_reward"});
    const auto& layout = require(doc, "layout");
    std::string text;
    if (layout.is_string()) {
        text = layout.get<std::string>();
    } else if (layout.is_array()) {
        for (const auto& row : layout) text += row.get<std::string>() + "\n";
    } else {
        throw ValidationError("environment: 'layout' must be a string or array of strings");
    }
    const double reward = doc.value("goal_reward", 1.0);
    return compile_maze(parse_ascii_maze(text, reward));
}

GraphSpec parse_graph(const json& doc) {
    reject_unknown_keys(doc, {"type", "n_states", "n_actions", "successors", "rewards",
                              "terminals", "start_states"});
    GraphSpec g;
    g.n_states = require(doc, "n_states").get<std::size_t>();
    g.n_actions = require(doc, "n_actions").get<std::size_t>();
    const auto& succ = require(doc, "successors");
    if (!succ.is_array() || succ.size() != g.n_states) {
        throw ValidationError("environment: 'successors' must have one entry per state");
    }
    g.successors.resize(g.n_states * g.n_actions);
    for (State s = 0; s < g.n_states; ++s) {
        const auto& per_state = succ[s];
        if (!per_state.is_array() || per_state.size() != g.n_actions) {
            throw ValidationError("environment: successors[" + std::to_string(s) +
                                  "] must have one entry per action");
        }
        for (Action a = 0; a < g.n_actions; ++a) {
            for (const auto& pair : per_state[a]) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw ValidationError("environment: successor entries are [state, probability]");
                }
                g.successors_of(s, a).push_back({pair[0].get<State>(), pair[1].get<double>()});
            }
        }
    }
    if (doc.contains("rewards")) {
        g.rewards = doc.at("rewards").get<std::vector<double>>();
    } else {
        g.rewards.assign(g.n_states, 0.0);
    }
    for (State t : require(doc, "terminals").get<std::vector<State>>()) g.terminals.insert(t);
    g.start_states = require(doc, "start_states").get<std::vector<State>>();
    return g;
}

}  // namespace

GraphSpec parse_environment(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("environment: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("environment: document must be an object");
    GraphSpec spec;
    try {
        const auto type = require(doc, "type").get<std::string>();
        if (type == "maze") spec = parse_maze(doc);
        else if (type == "graph") spec = parse_graph(doc);
        else throw ValidationError("environment: type must be \"graph\" or \"maze\", got \"" + type + "\"");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("environment: ") + e.what());
    }
    require_valid(spec);
    return spec;
}

GraphSpec load_environment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_environment(buf.str());
}

std::string export_environment(const GraphSpec& spec) {
    json doc;
    if (spec.maze) {
        const auto& m = spec.maze->maze;
        doc["type"] = "maze";
        doc["goal_reward"] = m.goal_reward;
        json rows = json::array();
        std::istringstream lines(to_ascii(m));
        for (std::string line; std::getline(lines, line);) rows.push_back(line);
        doc["layout"] = rows;
    } else {
        doc["type"] = "graph";
        doc["n_states"] = spec.n_states;
        doc["n_actions"] = spec.n_actions;
        json succ = json::array();
        for (State s = 0; s < spec.n_states; ++s) {
            json per_state = json::array();
            for (Action a = 0; a < spec.n_actions; ++a) {
                json list = json::array();
                for (const auto& [next, p] : spec.successors_of(s, a)) list.push_back({next, p});
                per_state.push_back(list);
            }
            succ.push_back(per_state);
        }
        doc["successors"] = succ;
        doc["rewards"] = spec.rewards;
        doc["terminals"] = std::vector<State>(spec.terminals.begin(), spec.terminals.end());
        doc["start_states"] = spec.start_states;
    }
    return doc.dump(2) + "\n";
}

}  // namespace neuronav
