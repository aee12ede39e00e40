#include "moco/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "moco/engine.hpp"
#include "moco/hypervolume.hpp"
#include "moco/opb.hpp"

namespace moco {

uint64_t current_rss_bytes() {
    std::ifstream statm("/proc/self/statm");
    if (!statm) return 0;
    uint64_t pages_total = 0, pages_resident = 0;
    statm >> pages_total >> pages_resident;
    if (!statm) return 0;
    long page = sysconf(_SC_PAGESIZE);
    return pages_resident * static_cast<uint64_t>(page > 0 ? page : 4096);
}

namespace {

// snapshots the archive on every change, stamped with elapsed time
class TraceObserver final : public EngineObserver {
public:
    TraceObserver(std::chrono::steady_clock::time_point t0, std::vector<TracePoint>& out)
        : t0_(t0), out_(out) {}

    void on_archive_change(const Archive& archive) override {
        TracePoint tp;
        tp.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
                .count();
        tp.front = archive.vectors();
        std::sort(tp.front.begin(), tp.front.end());
        out_.push_back(std::move(tp));
    }

private:
    std::chrono::steady_clock::time_point t0_;
    std::vector<TracePoint>& out_;
};

BenchRun execute_run(const std::string& path, const std::string& engine_name,
                     const BenchConfig& cfg) {
    BenchRun run;
    run.instance = path;
    run.engine = engine_name;
    try {
        MocoInstance inst = to_instance(parse_mo_opb_file(path));
        auto engine = make_engine(engine_name);

        EngineConfig ecfg;
        ecfg.seed = cfg.seed;
        auto t0 = std::chrono::steady_clock::now();
        ecfg.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(cfg.timeout_s));
        const uint64_t rss_cap = cfg.mem_mb * 1024 * 1024;
        ecfg.interrupt = [rss_cap] { return current_rss_bytes() > rss_cap; };

        TraceObserver obs(t0, run.trace);
        ParetoResult res = engine->solve(inst, ecfg, &obs);

        run.status = to_string(res.status);
        run.wall_ms = res.stats.wall_ms;
        run.sat_calls = res.stats.sat_calls;
        run.cores = res.stats.cores;
        run.front_size = res.img_front.size();
        run.img_front = res.img_front;
    } catch (const std::exception& e) {
        run.status = "error";
        run.error = e.what();
        run.img_front.clear();
        run.trace.clear();
    }
    return run;
}

std::string format_ms(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << v;
    return ss.str();
}

std::string format_hv(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    return ss.str();
}

}  // namespace

BenchReport run_suite(const BenchConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> tasks;
    for (const auto& path : cfg.instance_paths)
        for (const auto& eng : cfg.engines) tasks.emplace_back(path, eng);

    BenchReport report;
    report.runs.resize(tasks.size());

    const int jobs = std::max(1, cfg.jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            report.runs[i] = execute_run(tasks[i].first, tasks[i].second, cfg);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(report.runs.begin(), report.runs.end(), [](const BenchRun& a, const BenchRun& b) {
        return std::tie(a.instance, a.engine) < std::tie(b.instance, b.engine);
    });

    // reference front per instance, then score each run against it
    std::map<std::string, std::vector<std::vector<ObjectiveVector>>> per_instance;
    for (const auto& run : report.runs)
        per_instance[run.instance].push_back(run.img_front);
    for (auto& [path, fronts] : per_instance) {
        bool any_point = false;
        for (const auto& f : fronts)
            if (!f.empty()) any_point = true;
        if (!any_point) continue; // empty fronts only: no geometry to compare
        report.reference_fronts[path] = build_reference_front(fronts).points;
    }

    for (auto& run : report.runs) {
        auto it = report.reference_fronts.find(run.instance);
        if (it == report.reference_fronts.end()) {
            // nothing found by anyone; a complete empty front is a perfect answer
            run.hv = run.status == "complete" ? 1.0 : 0.0;
            continue;
        }
        ReferenceFront ref = build_reference_front({it->second});
        double denom = hypervolume(ref.points, ref).raw;
        run.hv = denom > 0.0 ? hypervolume(run.img_front, ref).raw / denom
                             : (run.img_front.empty() ? 0.0 : 1.0);
    }
    return report;
}

bool BenchReport::any_error() const {
    for (const auto& run : runs)
        if (run.status == "error") return true;
    return false;
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "instance,engine,status,wall_ms,sat_calls,cores,front_size,hv\n";
    for (const auto& r : runs)
        out << r.instance << ',' << r.engine << ',' << r.status << ',' << format_ms(r.wall_ms)
            << ',' << r.sat_calls << ',' << r.cores << ',' << r.front_size << ','
            << format_hv(r.hv) << '\n';
    return out.str();
}

std::string BenchReport::to_json() const {
    nlohmann::json j;
    nlohmann::json refs = nlohmann::json::object();
    for (const auto& [path, points] : reference_fronts) refs[path] = points;
    j["reference_fronts"] = std::move(refs);

    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : runs) {
        nlohmann::json jr;
        jr["instance"] = r.instance;
        jr["engine"] = r.engine;
        jr["status"] = r.status;
        jr["wall_ms"] = r.wall_ms;
        jr["sat_calls"] = r.sat_calls;
        jr["cores"] = r.cores;
        jr["front_size"] = r.front_size;
        jr["hv"] = r.hv;
        jr["img_front"] = r.img_front;
        if (!r.error.empty()) jr["error"] = r.error;
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& tp : r.trace)
            trace.push_back({{"elapsed_ms", tp.elapsed_ms}, {"front", tp.front}});
        jr["trace"] = std::move(trace);
        rs.push_back(std::move(jr));
    }
    j["runs"] = std::move(rs);
    return j.dump(2) + "\n";
}

}  // namespace moco
