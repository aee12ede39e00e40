#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "moco/types.hpp"

namespace moco {

//==============================================================================
// Benchmark suite runner: every engine against every instance, with per-run
// wall-clock and memory budgets, anytime traces, and a quality score per run.
//
// The score ("hv" column) is the ratio of the run front's dominated volume to
// that of the instance's reference front (the nondominated union of all run
// fronts).  A complete run scores exactly 1; partial runs score in [0, 1].
//==============================================================================

struct BenchConfig {
    std::vector<std::string> instance_paths;
    std::vector<std::string> engines; // names accepted by make_engine
    double timeout_s = 60.0;          // per run
    uint64_t mem_mb = 10240;          // best-effort RSS ceiling per run
    uint64_t seed = 0;
    int jobs = 1;                     // worker threads
};

struct TracePoint {
    double elapsed_ms = 0.0;
    std::vector<ObjectiveVector> front; // archive snapshot at that moment
};

struct BenchRun {
    std::string instance;
    std::string engine;
    std::string status; // "complete" | "timeout-partial" | "error"
    double wall_ms = 0.0;
    uint64_t sat_calls = 0;
    uint64_t cores = 0;
    size_t front_size = 0;
    double hv = 0.0;
    std::vector<ObjectiveVector> img_front;
    std::vector<TracePoint> trace;
    std::string error; // populated when status == "error"
};

struct BenchReport {
    std::vector<BenchRun> runs; // sorted by (instance, engine)
    std::map<std::string, std::vector<ObjectiveVector>> reference_fronts;

    bool any_error() const;
    // Header: instance,engine,status,wall_ms,sat_calls,cores,front_size,hv
    std::string to_csv() const;
    std::string to_json() const;
};

// Current resident set size; 0 where /proc is unavailable.
uint64_t current_rss_bytes();

BenchReport run_suite(const BenchConfig& cfg);

}  // namespace moco
