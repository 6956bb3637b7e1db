#include "neuronav/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "neuronav/config.hpp"
#include "neuronav/error.hpp"

namespace neuronav {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_cell(const MetricValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
}

std::ofstream open_out(const fs::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ordered_json json_number(double x) {
    // JSON has no NaN/inf; encode them as strings rather than dropping them.
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace

void write_records_csv(std::ostream& out, std::span<const ExperimentResult> results) {
    if (results.empty()) throw ContractError("write_records_csv: no results");
    const auto& columns = results.front().metric_columns;
    out << "experiment,algorithm,seed,run,episode,steps,return";
    for (const auto& c : columns) out << ',' << c;
    out << '\n';
    for (const auto& r : results) {
        if (r.metric_columns != columns) throw ContractError("write_records_csv: metric columns differ");
        const std::string prefix = std::string(experiment_name(r.experiment)) + "," +
                                   std::string(algorithm_name(r.algorithm)) + "," + std::to_string(r.seed) + ",";
        for (const auto& rec : r.records) {
            out << prefix << rec.run << ',' << rec.episode << ',' << rec.steps << ',' << format_double(rec.ret);
            for (const auto& v : rec.extras) out << ',' << csv_cell(v);
            out << '\n';
        }
    }
}

void write_field_map(const Matrix& grid, const fs::path& base) {
    if (grid.rows() == 0 || grid.cols() == 0) throw ContractError("write_field_map: empty grid");
    if (!grid.all_finite()) throw ContractError("write_field_map: non-finite values");
    const auto [lo_it, hi_it] = std::minmax_element(grid.data().begin(), grid.data().end());
    const double lo = *lo_it, hi = *hi_it;

    fs::path pgm = base;
    pgm += ".pgm";
    auto img = open_out(pgm, true);
    img << "P5\n" << grid.cols() << ' ' << grid.rows() << "\n65535\n";
    for (double x : grid.data()) {
        const auto level = hi > lo ? static_cast<unsigned>(std::lround((x - lo) / (hi - lo) * 65535.0)) : 32768u;
        const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xff)};
        img.write(bytes, 2);
    }
    close_checked(img, pgm);

    fs::path txt = base;
    txt += ".txt";
    auto raw = open_out(txt);
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) raw << (c ? " " : "") << format_double(grid(r, c));
        raw << '\n';
    }
    close_checked(raw, txt);
}

void write_points_csv(std::ostream& out, const Matrix& points, std::span<const int> labels) {
    if (!labels.empty() && labels.size() != points.rows()) throw ContractError("write_points_csv: label count");
    for (std::size_t c = 0; c < points.cols(); ++c) out << (c ? "," : "") << 'x' << c;
    if (!labels.empty()) out << ",label";
    out << '\n';
    for (std::size_t r = 0; r < points.rows(); ++r) {
        for (std::size_t c = 0; c < points.cols(); ++c) out << (c ? "," : "") << format_double(points(r, c));
        if (!labels.empty()) out << ',' << labels[r];
        out << '\n';
    }
}

void write_line_chart_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                          const std::string& y_label, std::span<const LineSeries> series, double marker_x) {
    constexpr double width = 720, height = 420, left = 70, right = 170, top = 40, bottom = 50;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};
    std::size_t n = 1;
    double y_max = 0.0;
    for (const auto& s : series) {
        n = std::max(n, s.values.size());
        for (double y : s.values)
            if (std::isfinite(y)) y_max = std::max(y_max, y);
    }
    if (y_max <= 0.0) y_max = 1.0;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto px = [&](double x) { return left + (n > 1 ? (x - 1.0) / static_cast<double>(n - 1) : 0.5) * plot_w; };
    auto py = [&](double y) { return top + plot_h - y / y_max * plot_h; };
    auto num = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", x);
        return std::string(buf);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<path d=\"M" << num(left) << ' ' << num(top) << " V" << num(top + plot_h) << " H" << num(left + plot_w)
        << "\" stroke=\"black\" fill=\"none\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double y = y_max * i / 4.0;
        out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">"
            << num(y) << "</text>\n";
    }
    for (std::size_t x : {std::size_t{1}, (n + 1) / 2, n}) {
        out << "<text x=\"" << num(px(static_cast<double>(x))) << "\" y=\"" << num(top + plot_h + 18)
            << "\" text-anchor=\"middle\">" << x << "</text>\n";
    }
    out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10) << "\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    out << "<text transform=\"translate(18," << num(top + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << y_label << "</text>\n";
    if (marker_x > 0.0) {
        out << "<line x1=\"" << num(px(marker_x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(marker_x))
            << "\" y2=\"" << num(top + plot_h) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % std::size(palette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[i].values.size(); ++k) {
            out << (k ? " " : "") << num(px(static_cast<double>(k + 1))) << ',' << num(py(series[i].values[k]));
        }
        out << "\"/>\n";
        const double ly = top + 14.0 + 18.0 * static_cast<double>(i);
        out << "<line x1=\"" << num(left + plot_w + 14) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(left + plot_w + 34) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(left + plot_w + 40) << "\" y=\"" << num(ly) << "\">" << series[i].name
            << "</text>\n";
    }
    out << "</svg>\n";
}

std::string agent_snapshot_json(const AgentState& st) {
    const std::size_t S = st.n_states(), A = st.n_actions();
    std::vector<double> transitions;
    transitions.reserve(S * A * S);
    for (State s = 0; s < S; ++s)
        for (Action a = 0; a < A; ++a) {
            const auto row = st.transition_estimate(s, a);
            transitions.insert(transitions.end(), row.begin(), row.end());
        }
    ordered_json doc;
    doc["n_states"] = S;
    doc["n_actions"] = A;
    doc["q"] = st.q;
    doc["psi"] = st.psi;
    doc["omega"] = st.omega;
    doc["v"] = st.v;
    doc["h"] = st.h;
    doc["e"] = st.e;
    doc["transition_model"] = transitions;
    doc["reward_model"] = st.reward_model;
    doc["layout"] = {{"q", "S x A"}, {"psi", "S x A x S"}, {"omega", "S"}, {"v", "S"}, {"h", "S x A"},
                     {"e", "S x A"}, {"transition_model", "S x A x S"}, {"reward_model", "S x A"}};
    return doc.dump(1);
}

std::string summary_json(std::span<const ExperimentConfig> configs, std::span<const ExperimentResult> results,
                         std::span<const CheckResult> checks) {
    if (configs.size() != results.size()) throw ContractError("summary_json: configs and results differ in length");
    ordered_json doc;
    if (!results.empty()) {
        doc["experiment"] = std::string(experiment_name(results.front().experiment));
        doc["seed"] = results.front().seed;
    }
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        ordered_json entry;
        entry["algorithm"] = std::string(algorithm_name(results[i].algorithm));
        entry["config"] = ordered_json::parse(config_to_json(configs[i]));
        ordered_json summary = ordered_json::object();
        for (const auto& [k, v] : results[i].summary) summary[k] = json_number(v);
        entry["summary"] = summary;
        runs.push_back(entry);
    }
    doc["results"] = runs;
    if (!checks.empty()) {
        ordered_json lines = ordered_json::array();
        for (const auto& c : checks) lines.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        doc["checks"] = lines;
    }
    return doc.dump(2) + "\n";
}

void write_result_directory(const fs::path& dir, std::span<const ExperimentConfig> configs,
                            std::span<const ExperimentResult> results, std::span<const CheckResult> checks) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    {
        const auto path = dir / "records.csv";
        auto out = open_out(path);
        write_records_csv(out, results);
        close_checked(out, path);
    }
    {
        const auto path = dir / "summary.json";
        auto out = open_out(path);
        out << summary_json(configs, results, checks);
        close_checked(out, path);
    }

    const bool many = results.size() > 1;
    for (const auto& r : results) {
        const std::string tag = many ? std::string(algorithm_name(r.algorithm)) + "_" : std::string();
        if (!r.field_maps.empty()) {
            fs::create_directories(dir / "maps", ec);
            if (ec) throw IoError("cannot create '" + (dir / "maps").string() + "'");
            for (const auto& [name, grid] : r.field_maps) write_field_map(grid, dir / "maps" / (tag + name));
        }
        if (!r.point_sets.empty()) {
            fs::create_directories(dir / "points", ec);
            if (ec) throw IoError("cannot create '" + (dir / "points").string() + "'");
            for (const auto& [name, points] : r.point_sets) {
                const auto path = dir / "points" / (tag + name + ".csv");
                auto out = open_out(path);
                const auto labels = r.point_labels.find(name);
                write_points_csv(out, points,
                                 labels == r.point_labels.end() ? std::span<const int>{} : labels->second);
                close_checked(out, path);
            }
        }
    }

    const auto kind = results.empty() ? ExperimentKind::Revaluation : results.front().experiment;
    if (kind == ExperimentKind::TransferReward || kind == ExperimentKind::TransferStructure) {
        std::vector<LineSeries> series;
        for (const auto& r : results) {
            const auto it = r.point_sets.find("mean_steps");
            if (it == r.point_sets.end()) continue;
            series.push_back({std::string(algorithm_name(r.algorithm)),
                              std::vector<double>(it->second.data().begin(), it->second.data().end())});
        }
        const auto path = dir / "steps.svg";
        auto out = open_out(path);
        const double marker = configs.front().edit_episode ? static_cast<double>(*configs.front().edit_episode) : 0.0;
        write_line_chart_svg(out, std::string(experiment_name(kind)) + ": mean steps to goal", "episode", "steps",
                             series, marker);
        close_checked(out, path);
    }

    if (results.size() == 1 && results.front().snapshot) {
        const auto path = dir / "agent_snapshot.json";
        auto out = open_out(path);
        out << agent_snapshot_json(*results.front().snapshot) << '\n';
        close_checked(out, path);
    }
}

}  // namespace neuronav
