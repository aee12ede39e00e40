#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "moco/bench.hpp"
#include "moco/engine.hpp"
#include "moco/hypervolume.hpp"
#include "support.hpp"

using namespace moco;
namespace fs = std::filesystem;

namespace {

fs::path write_instance(const fs::path& dir, const std::string& name,
                        const MoOpbDocument& doc) {
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << render_mo_opb(doc);
    return p;
}

fs::path suite_dir() {
    static fs::path dir = fs::temp_directory_path() / "moco_bench_tests";
    return dir;
}

BenchConfig small_suite(double timeout_s) {
    RandomPbParams a;
    a.num_vars = 8;
    a.num_constraints = 5;
    a.seed = 12; // three-point front
    SetCoverParams b;
    b.seed = 9;
    BenchConfig cfg;
    cfg.instance_paths = {
        write_instance(suite_dir(), "pb12.opb", generate_random_pb(a)).string(),
        write_instance(suite_dir(), "sc9.opb", generate_set_cover(b)).string(),
    };
    cfg.engines = engine_names();
    cfg.timeout_s = timeout_s;
    return cfg;
}

std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        // drop the wall_ms field (4th column)
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        REQUIRE(cols.size() == 8);
        cols.erase(cols.begin() + 3);
        for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("a full suite completes with perfect scores") {
    BenchConfig cfg = small_suite(120.0);
    BenchReport report = run_suite(cfg);
    REQUIRE(report.runs.size() == cfg.instance_paths.size() * cfg.engines.size());
    CHECK(!report.any_error());
    for (const auto& run : report.runs) {
        CHECK(run.status == "complete");
        CHECK(run.hv == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(run.front_size >= 1);
        CHECK(run.sat_calls >= 1);
    }
    // rows sorted by instance then engine
    for (size_t i = 1; i < report.runs.size(); ++i)
        CHECK(std::tie(report.runs[i - 1].instance, report.runs[i - 1].engine) <
              std::tie(report.runs[i].instance, report.runs[i].engine));
    // all engines agree per instance, so the reference front equals each front
    for (const auto& run : report.runs) {
        const auto& ref = report.reference_fronts.at(run.instance);
        CHECK(run.img_front == ref);
    }
}

TEST_CASE("csv has the fixed schema and is stable apart from timing") {
    BenchConfig cfg = small_suite(120.0);
    BenchReport r1 = run_suite(cfg);
    BenchReport r2 = run_suite(cfg);
    std::istringstream head(r1.to_csv());
    std::string header;
    std::getline(head, header);
    CHECK(header == "instance,engine,status,wall_ms,sat_calls,cores,front_size,hv");
    CHECK(strip_timing(r1.to_csv()) == strip_timing(r2.to_csv()));
}

TEST_CASE("zero timeout marks every run partial") {
    BenchConfig cfg = small_suite(0.0);
    BenchReport report = run_suite(cfg);
    for (const auto& run : report.runs) {
        CHECK(run.status == "timeout-partial");
        CHECK(run.hv >= 0.0);
        CHECK(run.hv <= 1.0 + 1e-9);
    }
}

TEST_CASE("unreadable instances become error rows without sinking the suite") {
    BenchConfig cfg = small_suite(120.0);
    cfg.instance_paths.push_back("/nonexistent/missing.opb");
    BenchReport report = run_suite(cfg);
    CHECK(report.any_error());
    size_t errors = 0, completes = 0;
    for (const auto& run : report.runs) {
        if (run.status == "error") {
            ++errors;
            CHECK(!run.error.empty());
            CHECK(run.instance == "/nonexistent/missing.opb");
        }
        if (run.status == "complete") ++completes;
    }
    CHECK(errors == cfg.engines.size());
    CHECK(completes == report.runs.size() - errors);
}

TEST_CASE("traces grow monotonically in dominated volume") {
    BenchConfig cfg = small_suite(120.0);
    BenchReport report = run_suite(cfg);
    for (const auto& run : report.runs) {
        if (run.front_size == 0) continue;
        ReferenceFront ref = build_reference_front({report.reference_fronts.at(run.instance)});
        double prev = -1.0;
        double prev_ms = 0.0;
        for (const auto& tp : run.trace) {
            CHECK(tp.elapsed_ms >= prev_ms);
            prev_ms = tp.elapsed_ms;
            double hv = hypervolume(tp.front, ref).raw;
            CHECK(hv >= prev - 1e-9);
            prev = hv;
        }
        // the last snapshot is the final front
        REQUIRE(!run.trace.empty());
        CHECK(run.trace.back().front == run.img_front);
    }
}

TEST_CASE("parallel execution returns the same report as serial") {
    BenchConfig cfg = small_suite(120.0);
    BenchReport serial = run_suite(cfg);
    cfg.jobs = 4;
    BenchReport parallel = run_suite(cfg);
    CHECK(strip_timing(serial.to_csv()) == strip_timing(parallel.to_csv()));
}

TEST_CASE("infeasible instances score perfect when proven empty") {
    MoOpbDocument doc;
    doc.objectives.push_back({{{1, mk_lit(1)}}});
    doc.constraints.push_back({{{1, mk_lit(1)}}, PbRel::GreaterEq, 1});
    doc.constraints.push_back({{{1, mk_lit(1)}}, PbRel::LessEq, 0});
    BenchConfig cfg;
    cfg.instance_paths = {write_instance(suite_dir(), "infeasible.opb", doc).string()};
    cfg.engines = engine_names();
    cfg.timeout_s = 60.0;
    BenchReport report = run_suite(cfg);
    CHECK(report.reference_fronts.empty());
    for (const auto& run : report.runs) {
        CHECK(run.status == "complete");
        CHECK(run.front_size == 0);
        CHECK(run.hv == 1.0);
    }
}

TEST_CASE("json report is well-formed") {
    BenchConfig cfg = small_suite(120.0);
    BenchReport report = run_suite(cfg);
    auto j = nlohmann::json::parse(report.to_json());
    CHECK(j.contains("reference_fronts"));
    REQUIRE(j.contains("runs"));
    CHECK(j["runs"].size() == report.runs.size());
    for (const auto& run : j["runs"]) {
        CHECK(run.contains("trace"));
        CHECK(run.contains("hv"));
    }
}
