#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neuronav/experiments.hpp"

namespace neuronav {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Algorithms compared by each protocol.
std::vector<Algorithm> replication_algorithms(ExperimentKind kind);

// Protocol defaults for every algorithm of the protocol, all sharing `seed`.
std::vector<ExperimentConfig> replication_configs(ExperimentKind kind, std::uint64_t seed);

std::vector<ExperimentResult> run_replication(std::span<const ExperimentConfig> configs);

// Qualitative claims each protocol is expected to reproduce. A claim whose
// algorithm is missing from `results` fails with a "missing" detail.
std::vector<CheckResult> replication_checks(ExperimentKind kind, std::span<const ExperimentResult> results);

}  // namespace neuronav
