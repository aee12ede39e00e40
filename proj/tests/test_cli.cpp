#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "moco_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    fs::path out_file = work_dir() / "stdout.txt";
    std::string cmd = std::string(MOCO_CLI_PATH) + " " + args + " > " + out_file.string() +
                      " 2> " + (work_dir() / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    res.out = ss.str();
    return res;
}

std::string file_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("solve --help").exit_code == 0);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("").exit_code == 1);                       // subcommand required
    CHECK(run_cli("solve").exit_code == 1);                  // missing -i
    CHECK(run_cli("frobnicate").exit_code == 1);             // unknown subcommand
    fs::path inst = work_dir() / "u.opb";
    std::ofstream(inst) << "min: 1 x1 ;\n1 x1 >= 0 ;\n";
    CHECK(run_cli("solve -i " + inst.string() + " -e warp-drive").exit_code == 1);
}

TEST_CASE("parse errors exit with code 2") {
    fs::path bad = work_dir() / "bad.opb";
    std::ofstream(bad) << "min: 1 x1 ;\n1 x1 >= 1\n"; // missing terminator
    CHECK(run_cli("solve -i " + bad.string()).exit_code == 2);
    CHECK(run_cli("oracle -i " + bad.string()).exit_code == 2);
    CHECK(run_cli("solve -i /nonexistent/x.opb").exit_code == 2);
}

TEST_CASE("gen, solve, and oracle agree end to end") {
    fs::path inst = work_dir() / "gen.opb";
    CHECK(run_cli("gen pb --vars 8 --constraints 5 --seed 12 -o " + inst.string()).exit_code ==
          0);
    auto oracle = run_cli("oracle -i " + inst.string());
    REQUIRE(oracle.exit_code == 0);
    auto oracle_json = nlohmann::json::parse(oracle.out);

    for (const std::string eng :
         {"core-guided", "core-guided-strat", "hitting-sets", "p-minimal"}) {
        auto solve = run_cli("solve -i " + inst.string() + " -e " + eng);
        REQUIRE(solve.exit_code == 0);
        auto solve_json = nlohmann::json::parse(solve.out);
        CHECK(solve_json["status"] == "complete");
        CHECK(solve_json["img_front"] == oracle_json["img_front"]);
    }
}

TEST_CASE("solve output is byte-stable across reruns") {
    fs::path inst = work_dir() / "stable.opb";
    REQUIRE(run_cli("gen sc --elements 5 --sets 7 --seed 3 -o " + inst.string()).exit_code == 0);
    auto a = run_cli("solve -i " + inst.string() + " --seed 4");
    auto b = run_cli("solve -i " + inst.string() + " --seed 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("hypervolume subcommand scores saved fronts") {
    fs::path inst = work_dir() / "hv.opb";
    REQUIRE(run_cli("gen pb --vars 7 --constraints 4 --seed 28 -o " + inst.string()).exit_code ==
            0);
    fs::path f1 = work_dir() / "front1.json";
    fs::path f2 = work_dir() / "front2.json";
    REQUIRE(run_cli("solve -i " + inst.string() + " -o " + f1.string()).exit_code == 0);
    REQUIRE(run_cli("oracle -i " + inst.string() + " -o " + f2.string()).exit_code == 0);
    auto hv = run_cli("hv " + f1.string() + " " + f2.string());
    REQUIRE(hv.exit_code == 0);
    auto j = nlohmann::json::parse(hv.out);
    REQUIRE(j["fronts"].size() == 2);
    // both are the complete front, so both fill the reference volume
    CHECK(j["fronts"][0]["relative"].get<double>() == doctest::Approx(1.0));
    CHECK(j["fronts"][1]["relative"].get<double>() == doctest::Approx(1.0));
    CHECK(run_cli("hv /nonexistent/front.json").exit_code == 2);
}

TEST_CASE("bench subcommand writes the csv schema") {
    fs::path inst = work_dir() / "bench.opb";
    REQUIRE(run_cli("gen pb --vars 7 --constraints 4 --seed 19 -o " + inst.string()).exit_code ==
            0);
    fs::path cfg_path = work_dir() / "bench_cfg.json";
    nlohmann::json cfg;
    cfg["instances"] = {inst.string()};
    cfg["engines"] = {"core-guided", "p-minimal"};
    cfg["timeout_s"] = 60.0;
    std::ofstream(cfg_path) << cfg.dump();

    fs::path csv_path = work_dir() / "bench.csv";
    fs::path json_path = work_dir() / "bench.json";
    auto res = run_cli("bench --config " + cfg_path.string() + " -o " + csv_path.string() +
                       " --json " + json_path.string());
    REQUIRE(res.exit_code == 0);
    std::istringstream csv(file_text(csv_path));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "instance,engine,status,wall_ms,sat_calls,cores,front_size,hv");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    auto j = nlohmann::json::parse(file_text(json_path));
    CHECK(j["runs"].size() == 2);
    CHECK(run_cli("bench --config /nonexistent/cfg.json").exit_code == 2);
}

TEST_CASE("timeout zero still produces valid output") {
    fs::path inst = work_dir() / "t0.opb";
    REQUIRE(run_cli("gen pb --vars 10 --constraints 6 --seed 29 -o " + inst.string()).exit_code ==
            0);
    auto res = run_cli("solve -i " + inst.string() + " --timeout 0.000001");
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["status"] == "timeout-partial");
}
