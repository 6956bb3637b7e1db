#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neuronav/experiments.hpp"

namespace neuronav {

std::string_view policy_name(PolicyKind kind);  // "softmax", "epsilon-greedy"
PolicyKind parse_policy(std::string_view name);
std::string_view cadence_name(PlanCadence cadence);  // "episode", "episode-and-surprise", "every-step"
PlanCadence parse_cadence(std::string_view name);

// Flat JSON object. Absent keys take the defaults of the chosen experiment;
// "experiment" may be omitted when `experiment` is given. Overrides are
// "key=value" strings applied on top of the document; a value that parses as
// JSON is used as such, anything else as a string. Unknown keys, type
// mismatches and out-of-range values throw ConfigError naming the key.
ExperimentConfig parse_config(std::string_view text, std::span<const std::string> overrides = {},
                              std::optional<ExperimentKind> experiment = std::nullopt);
ExperimentConfig load_config(const std::string& path, std::span<const std::string> overrides = {});

// Every field, including defaults; parse_config(config_to_json(c)) == c.
std::string config_to_json(const ExperimentConfig& config);

// Keys accepted by parse_config, in serialization order.
std::vector<std::string> config_keys();

}  // namespace neuronav
