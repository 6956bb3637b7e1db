#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "neuronav/config.hpp"
#include "neuronav/env_io.hpp"
#include "neuronav/error.hpp"
#include "neuronav/output.hpp"
#include "neuronav/presets.hpp"
#include "neuronav/replication.hpp"

namespace neuronav::cli {

namespace {

std::string resolve_out(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("NEURONAV_OUT"); env && *env) return env;
    throw CLI::ValidationError("--out", "no output directory: pass --out or set NEURONAV_OUT");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tabular reinforcement-learning agents on graph and maze environments", "neuronav"};
    app.require_subcommand(1);

    std::string config_path, out_dir, replicate_name, export_name;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    bool check = false;

    auto* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run_cmd->add_option("--set", overrides, "Override a config key: key=value")->allow_extra_args(false);
    run_cmd->add_option("--seed", seed, "Master seed");
    run_cmd->add_option("--out", out_dir, "Output directory (default: $NEURONAV_OUT)");

    auto* rep_cmd = app.add_subcommand("replicate", "Run a replication protocol across its algorithm set");
    rep_cmd->add_option("name", replicate_name, "revaluation | transfer-reward | transfer-structure | place-grid | community")
        ->required();
    rep_cmd->add_flag("--check", check, "Assert the protocol's expected outcome; exit 3 on failure");
    rep_cmd->add_option("--seed", seed, "Master seed");
    rep_cmd->add_option("--out", out_dir, "Output directory (default: $NEURONAV_OUT)");

    auto* preset_cmd = app.add_subcommand("preset", "Inspect built-in environments");
    preset_cmd->require_subcommand(1);
    auto* list_cmd = preset_cmd->add_subcommand("list", "List preset names");
    auto* export_cmd = preset_cmd->add_subcommand("export", "Print a preset as an environment file");
    export_cmd->add_option("name", export_name, "Preset name")->required();

    auto* validate_cmd = app.add_subcommand("validate", "Validate an experiment config or environment file");
    validate_cmd->add_option("--config", config_path, "File to validate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*run_cmd) {
            if (seed) overrides.push_back("master_seed=" + std::to_string(*seed));
            const std::string dir = resolve_out(out_dir);
            const ExperimentConfig config = parse_config(read_file(config_path), overrides);
            const std::vector<ExperimentConfig> configs{config};
            const std::vector<ExperimentResult> results{run_experiment(config)};
            write_result_directory(dir, configs, results);
            for (const auto& [k, v] : results.front().summary) out << k << " = " << format_double(v) << '\n';
            out << "wrote " << dir << '\n';
            return kOk;
        }
        if (*rep_cmd) {
            const ExperimentKind kind = parse_experiment(replicate_name);
            const std::string dir = resolve_out(out_dir);
            const auto configs = replication_configs(kind, seed.value_or(1));
            const auto results = run_replication(configs);
            std::vector<CheckResult> checks;
            if (check) checks = replication_checks(kind, results);
            write_result_directory(dir, configs, results, checks);
            print_checks(out, checks);
            out << "wrote " << dir << '\n';
            return all_passed(checks) ? kOk : kCheckFailed;
        }
        if (*list_cmd) {
            for (const auto& name : preset_names()) {
                const auto p = load_preset(name);
                out << name << "\t" << p.spec.n_states << " states\t" << p.metadata.description << '\n';
            }
            return kOk;
        }
        if (*export_cmd) {
            out << export_environment(load_preset(export_name).spec) << '\n';
            return kOk;
        }
        if (*validate_cmd) {
            const std::string text = read_file(config_path);
            const auto doc = nlohmann::json::parse(text, nullptr, false);
            if (doc.is_object() && doc.contains("type")) {
                const auto spec = parse_environment(text);
                out << "ok: environment with " << spec.n_states << " states, " << spec.n_actions << " actions\n";
            } else {
                const auto config = parse_config(text);
                out << "ok: " << experiment_name(config.experiment) << " config\n" << config_to_json(config) << '\n';
            }
            return kOk;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kUsage;
}

}  // namespace neuronav::cli
