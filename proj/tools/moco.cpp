// moco: exact multi-objective optimization over pseudo-Boolean instances.
//
// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "moco/bench.hpp"
#include "moco/brute_force.hpp"
#include "moco/engine.hpp"
#include "moco/generator.hpp"
#include "moco/hypervolume.hpp"
#include "moco/json_io.hpp"
#include "moco/opb.hpp"

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw moco::OpbParseError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SolveOptions {
    std::string instance;
    std::string engine = "core-guided";
    std::string output;
    double timeout_s = 0.0; // 0: no limit
    uint64_t seed = 0;
    bool anytime_strict = false;
    bool plus_one_fence = false;
    bool minimize_cores = false;
    double strat_ratio = 8.0;
    int strat_size_cap = 16;
};

int run_solve(const SolveOptions& opt) {
    moco::MocoInstance inst = moco::to_instance(moco::parse_mo_opb_file(opt.instance));
    auto engine = moco::make_engine(opt.engine);

    moco::EngineConfig cfg;
    cfg.seed = opt.seed;
    cfg.anytime_strict = opt.anytime_strict;
    cfg.fence_step_plus_one = opt.plus_one_fence;
    cfg.minimize_cores = opt.minimize_cores;
    cfg.strat.ratio_threshold = opt.strat_ratio;
    cfg.strat.size_cap = opt.strat_size_cap;
    if (opt.timeout_s > 0.0)
        cfg.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(opt.timeout_s));

    moco::ParetoResult res = engine->solve(inst, cfg);
    write_output(opt.output, moco::front_json(res, inst));
    std::cerr << moco::stats_json(res);
    return 0;
}

int run_oracle(const std::string& path, int cap, const std::string& output) {
    moco::MocoInstance inst = moco::to_instance(moco::parse_mo_opb_file(path));
    moco::OracleConfig ocfg;
    ocfg.var_cap = cap;
    moco::OracleResult oracle = moco::exact_front(inst, ocfg);

    moco::ParetoResult res;
    res.img_front = oracle.img_front;
    res.arg_front = oracle.arg_front;
    res.status = moco::SolveStatus::Complete;
    write_output(output, moco::front_json(res, inst));
    return 0;
}

int run_hv(const std::vector<std::string>& files, const std::string& output) {
    std::vector<std::vector<moco::ObjectiveVector>> fronts;
    for (const auto& f : files) {
        try {
            fronts.push_back(moco::parse_front_json(read_file(f)));
        } catch (const moco::OpbParseError&) {
            throw;
        } catch (const std::runtime_error& e) {
            throw moco::OpbParseError(0, e.what());
        }
    }

    nlohmann::json j;
    bool any_point = false;
    for (const auto& f : fronts)
        if (!f.empty()) any_point = true;

    nlohmann::json rows = nlohmann::json::array();
    if (!any_point) {
        for (const auto& f : files)
            rows.push_back({{"file", f}, {"raw", 0.0}, {"normalized", 0.0}, {"relative", 0.0}});
        j["reference_front"] = nlohmann::json::array();
    } else {
        moco::ReferenceFront ref = moco::build_reference_front(fronts);
        double denom = moco::hypervolume(ref.points, ref).raw;
        for (size_t i = 0; i < files.size(); ++i) {
            moco::HvResult hv = moco::hypervolume(fronts[i], ref);
            rows.push_back({{"file", files[i]},
                            {"raw", hv.raw},
                            {"normalized", hv.normalized},
                            {"relative", denom > 0.0 ? hv.raw / denom : 0.0},
                            {"exact", hv.exact}});
        }
        j["reference_front"] = ref.points;
    }
    j["fronts"] = std::move(rows);
    write_output(output, j.dump(2) + "\n");
    return 0;
}

int run_bench(const std::string& config_path, const std::string& csv_out,
              const std::string& json_out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(config_path));
    } catch (const nlohmann::json::exception& e) {
        throw moco::OpbParseError(0, std::string("bench config: ") + e.what());
    }
    moco::BenchConfig cfg;
    if (!j.contains("instances") || !j["instances"].is_array())
        throw moco::OpbParseError(0, "bench config: 'instances' array required");
    for (const auto& p : j["instances"]) cfg.instance_paths.push_back(p.get<std::string>());
    if (j.contains("engines"))
        for (const auto& e : j["engines"]) cfg.engines.push_back(e.get<std::string>());
    else
        cfg.engines = moco::engine_names();
    cfg.timeout_s = j.value("timeout_s", 60.0);
    cfg.mem_mb = j.value("mem_mb", uint64_t{10240});
    cfg.seed = j.value("seed", uint64_t{0});
    cfg.jobs = j.value("jobs", 1);

    moco::BenchReport report = moco::run_suite(cfg);
    write_output(csv_out, report.to_csv());
    if (!json_out.empty()) write_output(json_out, report.to_json());
    return report.any_error() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact multi-objective pseudo-Boolean optimization"};
    app.require_subcommand(1);

    SolveOptions sopt;
    CLI::App* solve = app.add_subcommand("solve", "Compute the Pareto front of an instance");
    solve->add_option("-i,--instance", sopt.instance, "MO-OPB instance file")->required();
    solve->add_option("-e,--engine", sopt.engine, "Search engine")
        ->check(CLI::IsMember(moco::engine_names()))
        ->capture_default_str();
    solve->add_option("-o,--output", sopt.output, "Front JSON output file (default stdout)");
    solve->add_option("--timeout", sopt.timeout_s, "Per-run time limit in seconds (0: none)");
    solve->add_option("--seed", sopt.seed, "Random seed")->capture_default_str();
    solve->add_flag("--anytime-strict", sopt.anytime_strict,
                    "Publish models only once proven Pareto-optimal");
    solve->add_flag("--plus-one-fence", sopt.plus_one_fence,
                    "Raise fences by one instead of jumping to the next attainable value");
    solve->add_flag("--minimize-cores", sopt.minimize_cores,
                    "Shrink unsatisfiable cores before using them");
    solve->add_option("--strat-ratio", sopt.strat_ratio,
                      "Weight ratio that opens a new stratification level")
        ->capture_default_str();
    solve->add_option("--strat-size-cap", sopt.strat_size_cap,
                      "Maximum terms per stratification level")
        ->capture_default_str();

    std::string oracle_instance, oracle_output;
    int oracle_cap = 20;
    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive front for small instances");
    oracle->add_option("-i,--instance", oracle_instance, "MO-OPB instance file")->required();
    oracle->add_option("--cap", oracle_cap, "Variable-count cap")->capture_default_str();
    oracle->add_option("-o,--output", oracle_output, "Front JSON output file (default stdout)");

    CLI::App* gen = app.add_subcommand("gen", "Generate benchmark instances");
    gen->require_subcommand(1);

    moco::SetCoverParams scp;
    std::string gen_output;
    CLI::App* gen_sc = gen->add_subcommand("sc", "Multi-objective weighted set cover");
    gen_sc->add_option("--elements", scp.n_elements, "Elements to cover")->capture_default_str();
    gen_sc->add_option("--sets", scp.n_sets, "Candidate sets")->capture_default_str();
    gen_sc->add_option("-m,--objectives", scp.m, "Objective count")->capture_default_str();
    gen_sc->add_option("--density", scp.density, "Coverage probability")->capture_default_str();
    gen_sc->add_option("--weight-max", scp.weight_max, "Maximum set cost")->capture_default_str();
    gen_sc->add_option("--seed", scp.seed, "Random seed")->capture_default_str();
    gen_sc->add_option("-o,--output", gen_output, "Output file (default stdout)");

    moco::RandomPbParams rpp;
    CLI::App* gen_pb = gen->add_subcommand("pb", "Unstructured random pseudo-Boolean");
    gen_pb->add_option("--vars", rpp.num_vars, "Variable count")->capture_default_str();
    gen_pb->add_option("--constraints", rpp.num_constraints, "Constraint count")
        ->capture_default_str();
    gen_pb->add_option("-m,--objectives", rpp.m, "Objective count")->capture_default_str();
    gen_pb->add_option("--weight-max", rpp.weight_max, "Maximum weight")->capture_default_str();
    gen_pb->add_option("--max-terms", rpp.max_terms, "Maximum terms per constraint")
        ->capture_default_str();
    gen_pb->add_option("--seed", rpp.seed, "Random seed")->capture_default_str();
    gen_pb->add_option("-o,--output", gen_output, "Output file (default stdout)");

    std::vector<std::string> hv_files;
    std::string hv_output;
    CLI::App* hv = app.add_subcommand("hv", "Hypervolume scores for saved fronts");
    hv->add_option("fronts", hv_files, "Front JSON files")->required()->expected(-1);
    hv->add_option("-o,--output", hv_output, "Output file (default stdout)");

    std::string bench_config, bench_csv, bench_json;
    CLI::App* bench = app.add_subcommand("bench", "Run an engine/instance benchmark suite");
    bench->add_option("--config", bench_config, "Suite config JSON")->required();
    bench->add_option("-o,--csv", bench_csv, "CSV output file (default stdout)");
    bench->add_option("--json", bench_json, "Full JSON report output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(sopt);
        if (oracle->parsed()) return run_oracle(oracle_instance, oracle_cap, oracle_output);
        if (gen->parsed()) {
            moco::MoOpbDocument doc =
                gen_sc->parsed() ? moco::generate_set_cover(scp) : moco::generate_random_pb(rpp);
            write_output(gen_output, moco::render_mo_opb(doc));
            return 0;
        }
        if (hv->parsed()) return run_hv(hv_files, hv_output);
        if (bench->parsed()) return run_bench(bench_config, bench_csv, bench_json);
    } catch (const moco::OpbParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
