#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "neuronav/error.hpp"
#include "neuronav/output.hpp"
#include "support/temp_dir.hpp"

using namespace neuronav;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

ExperimentResult tiny_result(Algorithm alg) {
    ExperimentResult r;
    r.experiment = ExperimentKind::TransferReward;
    r.algorithm = alg;
    r.seed = 3;
    r.metric_columns = {"done", "tag"};
    r.records = {{0, 1, 12, 10.0, {1.0, std::string("a,b")}}, {0, 2, 7, 0.1, {0.0, std::string("plain")}}};
    r.summary = {{"post_to_pre_ratio", 0.5}};
    Matrix curve(1, 2);
    curve(0, 0) = 12;
    curve(0, 1) = 7;
    r.point_sets["mean_steps"] = curve;
    r.field_maps["map"] = Matrix::from_rows({{0, 1}, {1, 0}});
    return r;
}

std::uint16_t pixel(const std::string& pgm, std::size_t header, std::size_t i) {
    const auto hi = static_cast<unsigned char>(pgm[header + 2 * i]);
    const auto lo = static_cast<unsigned char>(pgm[header + 2 * i + 1]);
    return static_cast<std::uint16_t>(hi << 8 | lo);
}

}  // namespace

TEST_SUITE("output") {
    TEST_CASE("doubles use 17 significant digits and round-trip") {
        CHECK(format_double(0.1) == "0.10000000000000001");
        CHECK(format_double(1.0) == "1");
        Rng rng(5);
        for (int i = 0; i < 1000; ++i) {
            const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.uniform_index(40)) - 20);
            CHECK(std::stod(format_double(x)) == x);
        }
    }

    TEST_CASE("records csv") {
        const std::vector<ExperimentResult> results{tiny_result(Algorithm::Mbv)};
        std::ostringstream os;
        write_records_csv(os, results);
        CHECK(os.str() ==
              "experiment,algorithm,seed,run,episode,steps,return,done,tag\n"
              "transfer-reward,MBV,3,0,1,12,10,1,\"a,b\"\n"
              "transfer-reward,MBV,3,0,2,7,0.10000000000000001,0,plain\n");
        auto other = tiny_result(Algorithm::TdQ);
        other.metric_columns = {"x"};
        const std::vector<ExperimentResult> mixed{results[0], other};
        std::ostringstream sink;
        CHECK_THROWS(write_records_csv(sink, mixed));
    }

    TEST_CASE("field map: 1x1 constant grid") {
        TempDir dir("pgm1");
        write_field_map(Matrix(1, 1, 5.0), dir / "one");
        const auto pgm = slurp(dir / "one.pgm");
        const std::string header = "P5\n1 1\n65535\n";
        REQUIRE(pgm.size() == header.size() + 2);
        CHECK(pgm.substr(0, header.size()) == header);
        CHECK(pixel(pgm, header.size(), 0) == 32768);
        CHECK(slurp(dir / "one.txt") == "5\n");
    }

    TEST_CASE("field map: 2x2 normalization") {
        TempDir dir("pgm2");
        write_field_map(Matrix::from_rows({{0, 1}, {1, 0}}), dir / "two");
        const auto pgm = slurp(dir / "two.pgm");
        const std::string header = "P5\n2 2\n65535\n";
        REQUIRE(pgm.size() == header.size() + 8);
        CHECK(pixel(pgm, header.size(), 0) == 0);
        CHECK(pixel(pgm, header.size(), 1) == 65535);
        CHECK(pixel(pgm, header.size(), 2) == 65535);
        CHECK(pixel(pgm, header.size(), 3) == 0);
        CHECK(slurp(dir / "two.txt") == "0 1\n1 0\n");
        CHECK_THROWS_AS(write_field_map(Matrix(1, 1), "/nonexistent/dir/x"), IoError);
    }

    TEST_CASE("points csv and svg") {
        std::ostringstream os;
        write_points_csv(os, Matrix::from_rows({{1, 2}, {3, 4}}), std::vector<int>{0, 1});
        CHECK(os.str() == "x0,x1,label\n1,2,0\n3,4,1\n");
        std::ostringstream svg;
        const std::vector<LineSeries> series{{"MBV", {10, 5, 4}}, {"TD-Q", {12, 11, 10}}};
        write_line_chart_svg(svg, "steps", "episode", "steps", series, 2.0);
        const auto s = svg.str();
        CHECK(s.starts_with("<svg"));
        CHECK(s.find("</svg>") != std::string::npos);
        CHECK(s.find("stroke-dasharray") != std::string::npos);
        CHECK(s.find("TD-Q") != std::string::npos);
    }

    TEST_CASE("snapshot json has every table") {
        AgentState st(2, 1);
        st.q = {1.5, 0.0};
        const auto j = nlohmann::json::parse(agent_snapshot_json(st));
        for (const char* key : {"q", "psi", "omega", "v", "h", "e", "transition_model", "reward_model"})
            CHECK(j.contains(key));
        CHECK(j["q"][0] == 1.5);
    }

    TEST_CASE("summary json echoes the config") {
        const std::vector<ExperimentConfig> configs{ExperimentConfig::defaults_for(ExperimentKind::TransferReward)};
        const std::vector<ExperimentResult> results{tiny_result(Algorithm::DynaSr)};
        const std::vector<CheckResult> checks{{"claim", true, "ok"}};
        const auto j = nlohmann::json::parse(summary_json(configs, results, checks));
        CHECK(j["experiment"] == "transfer-reward");
        CHECK(j["results"][0]["algorithm"] == "Dyna-SR");
        CHECK(j["results"][0]["config"]["gamma"] == 0.95);
        CHECK(j["results"][0]["config"]["edit_episode"] == 75);
        CHECK(j["results"][0]["summary"]["post_to_pre_ratio"] == 0.5);
        CHECK(j["checks"][0]["passed"] == true);
    }

    TEST_CASE("result directory layout") {
        TempDir dir("layout");
        const std::vector<ExperimentConfig> configs{ExperimentConfig::defaults_for(ExperimentKind::TransferReward),
                                                    ExperimentConfig::defaults_for(ExperimentKind::TransferReward)};
        const std::vector<ExperimentResult> results{tiny_result(Algorithm::Mbv), tiny_result(Algorithm::TdQ)};
        write_result_directory(dir / "out", configs, results);
        for (const char* f : {"records.csv", "summary.json", "steps.svg", "maps/MBV_map.pgm", "maps/TD-Q_map.txt"}) {
            CAPTURE(f);
            CHECK(std::filesystem::exists(dir / "out" / f));
        }
        CHECK_FALSE(std::filesystem::exists(dir / "out" / "agent_snapshot.json"));
    }
}
