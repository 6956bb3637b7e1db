#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "neuronav/experiments.hpp"
#include "neuronav/replication.hpp"
#include "neuronav/matrix.hpp"

namespace neuronav {

// 17 significant digits, which round-trips any double.
std::string format_double(double x);

// Header `experiment,algorithm,seed,run,episode,steps,return` followed by the
// metric columns, which must agree across `results`.
void write_records_csv(std::ostream& out, std::span<const ExperimentResult> results);

// 16-bit binary PGM (maxval 65535, big-endian), min-max normalized; a
// constant grid is mid-gray (32768). Writes <base>.pgm and <base>.txt with
// the raw values, one grid row per line. Throws IoError.
void write_field_map(const Matrix& grid, const std::filesystem::path& base);

// Rows of `points` as x0,x1,...[,label].
void write_points_csv(std::ostream& out, const Matrix& points, std::span<const int> labels = {});

struct LineSeries {
    std::string name;
    std::vector<double> values;  // y at x = 1, 2, ...
};

// Minimal standalone SVG line chart; `marker_x` (if > 0) draws a vertical
// dashed line, used for the edit episode.
void write_line_chart_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                          const std::string& y_label, std::span<const LineSeries> series, double marker_x = 0.0);

// JSON object with the tables named in the agent-state layout (q, psi,
// omega, v, h, e, transition model, reward model) as flat arrays plus shape.
std::string agent_snapshot_json(const AgentState& state);

// Summary document: experiment, seed, per-algorithm config echo and summary
// scalars, and optional check lines.
std::string summary_json(std::span<const ExperimentConfig> configs, std::span<const ExperimentResult> results,
                         std::span<const CheckResult> checks = {});

// Writes every artifact of `results` into `dir` (created if missing):
// records.csv, summary.json, maps/*.pgm|txt, points/*.csv, steps.svg for
// transfer runs, and agent_snapshot.json when a single result carries one.
void write_result_directory(const std::filesystem::path& dir, std::span<const ExperimentConfig> configs,
                            std::span<const ExperimentResult> results, std::span<const CheckResult> checks = {});

}  // namespace neuronav
