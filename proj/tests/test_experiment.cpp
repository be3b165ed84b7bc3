#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>

#include "dismantle/experiment.hpp"
#include "support.hpp"

using namespace dismantle;
using experiment::ExperimentConfig;
using experiment::NetworkSpec;
using experiment::ResultRow;
using experiment::ResultTable;

namespace {

std::filesystem::path scratch_dir(const std::string& stem) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() /
               (stem + "_" + std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentConfig base_config() {
    ExperimentConfig config;
    config.data_dir = testsup::data_dir();
    return config;
}

ResultRow row(const std::string& network, const std::string& strategy, std::size_t rep,
              int step, double lcc) {
    ResultRow r;
    r.network = network;
    r.strategy = strategy;
    r.replication = rep;
    r.step = step;
    r.lcc_norm = lcc;
    return r;
}

}  // namespace

TEST_CASE("network specs parse dataset names and model tokens") {
    NetworkSpec meet = NetworkSpec::parse("meetings");
    REQUIRE(meet.kind == NetworkSpec::Kind::dataset);
    REQUIRE(meet.id() == "meetings");

    NetworkSpec ba = NetworkSpec::parse("ba:100,2");
    REQUIRE(ba.kind == NetworkSpec::Kind::ba);
    REQUIRE(ba.ba_n == 100);
    REQUIRE(ba.ba_m == 2);
    REQUIRE(ba.id() == "ba_100_2");

    REQUIRE_THROWS_AS(NetworkSpec::parse("mafia"), std::invalid_argument);
    REQUIRE_THROWS_AS(NetworkSpec::parse("ba:100"), std::invalid_argument);
    REQUIRE_THROWS_AS(NetworkSpec::parse("ba:0,2"), std::invalid_argument);
    REQUIRE_THROWS_AS(NetworkSpec::parse("ba:x,2"), std::invalid_argument);
}

TEST_CASE("every published strategy token resolves") {
    for (const std::string& name : experiment::strategy_names())
        REQUIRE_NOTHROW(experiment::strategy_from_name(name));
    REQUIRE_THROWS_AS(experiment::strategy_from_name("nuke"), std::invalid_argument);
}

TEST_CASE("a deterministic cell on a real network runs once") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("meetings")};
    config.strategies = {"degree"};
    config.replications = 30;
    ResultTable table = experiment::run_matrix(config);
    REQUIRE(table.rows.size() == 101);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        REQUIRE(table.rows[i].replication == 1);
        REQUIRE(table.rows[i].step == static_cast<int>(i + 1));
    }
}

TEST_CASE("role cells stop when the role subset is exhausted") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("meetings")};
    config.strategies = {"caporegime"};
    ResultTable table = experiment::run_matrix(config);
    REQUIRE(table.rows.size() == 12);
    REQUIRE(table.rows.back().lcc_norm > 0.5);
}

TEST_CASE("synthetic cells replicate with regrown networks") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("ba:40,2")};
    config.strategies = {"random"};
    config.replications = 3;
    ResultTable table = experiment::run_matrix(config);
    REQUIRE(table.rows.size() == 3 * 40);
    bool saw_difference = false;
    for (int step = 1; step <= 40; ++step) {
        NodeId first = 0, second = 0;
        for (const auto& r : table.rows) {
            if (r.step != step) continue;
            if (r.replication == 1) first = r.removed;
            if (r.replication == 2) second = r.removed;
        }
        if (first != second) saw_difference = true;
    }
    REQUIRE(saw_difference);
}

TEST_CASE("rows arrive canonically sorted whatever the config order") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("phone_calls"), NetworkSpec::parse("meetings")};
    config.strategies = {"degree", "closeness"};
    ResultTable table = experiment::run_matrix(config);
    REQUIRE(table.rows.front().network == "meetings");
    REQUIRE(table.rows.front().strategy == "closeness");
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const auto& a = table.rows[i - 1];
        const auto& b = table.rows[i];
        REQUIRE(std::tie(a.network, a.strategy, a.replication, a.step) <
                std::tie(b.network, b.strategy, b.replication, b.step));
    }
}

TEST_CASE("matrix configs are validated up front") {
    ExperimentConfig config = base_config();
    REQUIRE_THROWS_AS(experiment::run_matrix(config), std::invalid_argument);
    config.networks = {NetworkSpec::parse("meetings")};
    config.strategies = {"degree"};
    config.replications = 0;
    REQUIRE_THROWS_AS(experiment::run_matrix(config), std::invalid_argument);
}

TEST_CASE("output files cover each network and a merged table") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("meetings"), NetworkSpec::parse("ba:30,2")};
    config.strategies = {"degree"};
    config.replications = 2;
    ResultTable table = experiment::run_matrix(config);
    REQUIRE(table.rows.size() == 101 + 2 * 30);

    auto dir = scratch_dir("dismantle_out");
    auto written = experiment::write_outputs(table, dir.string());
    REQUIRE(written.size() == 3);

    auto count_rows = [](const std::string& text) {
        std::size_t lines = 0;
        for (char c : text) lines += c == '\n';
        return lines - 1;
    };
    std::size_t merged = count_rows(slurp((dir / "merged.csv").string()));
    std::size_t split = count_rows(slurp((dir / "meetings.csv").string())) +
                        count_rows(slurp((dir / "ba_30_2.csv").string()));
    REQUIRE(merged == table.rows.size());
    REQUIRE(split == merged);
}

TEST_CASE("identical configs produce byte-identical output files") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("ba:30,2"), NetworkSpec::parse("meetings")};
    config.strategies = {"degree", "random", "caporegime"};
    config.replications = 2;

    auto dir_a = scratch_dir("dismantle_rerun_a");
    auto dir_b = scratch_dir("dismantle_rerun_b");
    experiment::write_outputs(experiment::run_matrix(config), dir_a.string());
    experiment::write_outputs(experiment::run_matrix(config), dir_b.string());
    REQUIRE(slurp((dir_a / "merged.csv").string()) == slurp((dir_b / "merged.csv").string()));
}

TEST_CASE("result tables survive the round trip through CSV") {
    ExperimentConfig config = base_config();
    config.networks = {NetworkSpec::parse("ba:25,2")};
    config.strategies = {"degree", "random"};
    config.replications = 2;
    ResultTable table = experiment::run_matrix(config);

    auto dir = scratch_dir("dismantle_roundtrip");
    experiment::write_outputs(table, dir.string());
    ResultTable back = experiment::load_result_table((dir / "merged.csv").string());
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& a = table.rows[i];
        const auto& b = back.rows[i];
        REQUIRE(a.network == b.network);
        REQUIRE(a.strategy == b.strategy);
        REQUIRE(a.replication == b.replication);
        REQUIRE(a.step == b.step);
        REQUIRE(a.removed == b.removed);
        REQUIRE(a.cc_norm == b.cc_norm);
        REQUIRE(a.lcc_norm == b.lcc_norm);
        REQUIRE(a.eff_norm == b.eff_norm);
    }
}

TEST_CASE("loading rejects malformed result files") {
    auto dir = scratch_dir("dismantle_badcsv");
    std::string path = (dir / "bad.csv").string();
    std::ofstream(path) << "wrong,header\n";
    REQUIRE_THROWS_AS(experiment::load_result_table(path), dataset::ParseError);

    std::ofstream(path) << std::string(experiment::result_csv_header) << "\nx,y,1,1,1,0,0\n";
    REQUIRE_THROWS_AS(experiment::load_result_table(path), dataset::ParseError);
}

TEST_CASE("summaries average replications pointwise") {
    ResultTable table;
    table.rows = {row("x", "s", 1, 1, 0.5), row("x", "s", 2, 1, 0.3),
                  row("x", "s", 1, 2, 0.2), row("x", "s", 2, 2, 0.0)};
    auto cells = experiment::summarize(table, 0.25);
    REQUIRE(cells.size() == 1);
    REQUIRE(cells[0].mean.size() == 2);
    REQUIRE(cells[0].mean[0].lcc_norm == 0.4);
    REQUIRE(cells[0].mean[1].lcc_norm == 0.1);
    REQUIRE(cells[0].dismantling_step == 2);
}

TEST_CASE("a cell that never crosses the threshold reports no step") {
    ResultTable table;
    table.rows = {row("x", "s", 1, 1, 0.8), row("x", "s", 1, 2, 0.0)};
    auto cells = experiment::summarize(table, 0.0);
    REQUIRE_FALSE(cells[0].dismantling_step.has_value());
    REQUIRE_THROWS_AS(experiment::summarize(ResultTable{}), std::invalid_argument);
}

TEST_CASE("a shattering first step summarizes to step one") {
    ResultTable table;
    for (int step = 1; step <= 5; ++step)
        table.rows.push_back(row("star", "degree", 1, step, step == 1 ? 0.2 : 0.0));
    auto cells = experiment::summarize(table);
    REQUIRE(cells[0].dismantling_step == 1);
}

TEST_CASE("config files parse keys, comments, and repeats") {
    auto dir = scratch_dir("dismantle_config");
    std::string path = (dir / "run.conf").string();
    std::ofstream(path) << "# experiment setup\n"
                        << "network=meetings\n"
                        << "network=ba:100,2\n"
                        << "strategy=degree\n"
                        << "  replications=5\n"
                        << "seed=7\n"
                        << "\n"
                        << "out=results\n";
    auto kv = experiment::parse_config_file(path);
    REQUIRE(kv.at("network") == "meetings,ba:100,2");
    REQUIRE(kv.at("strategy") == "degree");
    REQUIRE(kv.at("replications") == "5");
    REQUIRE(kv.at("seed") == "7");
    REQUIRE(kv.at("out") == "results");

    std::ofstream(path) << "networks=meetings\n";
    REQUIRE_THROWS_AS(experiment::parse_config_file(path), dataset::ParseError);
    std::ofstream(path) << "no equals sign\n";
    REQUIRE_THROWS_AS(experiment::parse_config_file(path), dataset::ParseError);
}
