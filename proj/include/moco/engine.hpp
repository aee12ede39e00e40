#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moco/archive.hpp"
#include "moco/encoder.hpp"
#include "moco/types.hpp"

namespace moco {

struct StratParams {
    double ratio_threshold = 8.0;  // new partition when weight ratio exceeds this
    int size_cap = 16;             // or when a partition would exceed this many terms
};

struct EngineConfig {
    uint64_t seed = 0;
    // Stage fenced models in a side list and publish them only once the fence
    // phase proves them optimal (strict-archive anytime behaviour).
    bool anytime_strict = false;
    // Advance the fence by +1 instead of to the next attainable value.
    bool fence_step_plus_one = false;
    bool minimize_cores = false;
    StratParams strat;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    // Extra abort predicate polled alongside the deadline (resource caps).
    std::function<bool()> interrupt;

    bool out_of_time() const {
        return deadline && std::chrono::steady_clock::now() >= *deadline;
    }
};

// Instrumentation hooks; default no-ops. Engines invoke these synchronously,
// observers must not mutate engine state.
struct EngineObserver {
    virtual ~EngineObserver() = default;

    // any engine: the published archive changed (anytime trace)
    virtual void on_archive_change(const Archive& /*archive*/) {}

    // core-guided search
    virtual void on_outer_head(const ObjectiveVector& /*fence*/, const Archive& /*archive*/,
                               const std::vector<ObjectiveVector>& /*blocked*/) {}
    virtual void on_inner_model(const Archive& /*archive*/,
                                const std::vector<ObjectiveVector>& /*blocked*/) {}
    virtual void on_fence_bump(const ObjectiveVector& /*fence*/) {}
    virtual void on_strat_round(size_t /*round*/, size_t /*total_rounds*/,
                                const MultiObjective& /*exposed*/) {}

    // hitting-sets relaxation: one event per iteration, after the diagnosis
    // round finished and the tightening clauses were computed
    virtual void on_relaxation_round(const std::vector<Assignment>& /*front_tuples*/,
                                     const std::vector<ObjectiveVector>& /*front_vecs*/,
                                     size_t /*diagnosis_size*/,
                                     const std::vector<Clause>& /*clauses_added*/) {}

    // p-minimal descent
    virtual void on_chain_step(const ObjectiveVector& /*from*/, const ObjectiveVector& /*to*/) {}
};

class MocoEngine {
public:
    virtual ~MocoEngine() = default;
    virtual ParetoResult solve(const MocoInstance& inst, const EngineConfig& cfg,
                               EngineObserver* obs = nullptr) = 0;
    virtual std::string name() const = 0;
};

// Engine registry: "core-guided", "core-guided-strat", "hitting-sets",
// "p-minimal". Throws std::invalid_argument for unknown names.
std::unique_ptr<MocoEngine> make_engine(const std::string& name);
std::vector<std::string> engine_names();

//=============================================================================
// Fence machinery shared by the core-guided and p-minimal engines
//=============================================================================

struct FenceAssumption {
    Lit lit;        // negated order literal, assumed false
    size_t obj;     // objective index
    int64_t value;  // threshold the assumption blocks
};

// Assumptions forcing f_i(x) <= fence_i pointwise: one negated order literal
// per objective that still has a threshold above its fence entry.
std::vector<FenceAssumption> fence_assumptions(const EncodedInstance& enc,
                                               const ObjectiveVector& fence,
                                               bool step_plus_one = false);

// Clause satisfied exactly by models whose objective vector is NOT weakly
// dominated by y: one negated order literal per nonzero component. All-zero y
// yields the empty clause.
Clause dominance_blocking_clause(const EncodedInstance& enc, const ObjectiveVector& y);

// Advances the fence to the blocked value named by each core literal.
void bump_fence(ObjectiveVector& fence, const std::vector<Lit>& core,
                const std::vector<FenceAssumption>& assumptions);

}  // namespace moco
