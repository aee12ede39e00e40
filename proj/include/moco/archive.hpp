#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "moco/types.hpp"

namespace moco {

//=============================================================================
// Incumbent archive
//=============================================================================

// Mutually non-dominated set of (tuple, vector) pairs with distinct vectors.
// Insertion keeps the first witness for a vector and evicts entries the new
// vector dominates.
class Archive {
public:
    struct Entry {
        Assignment tuple;
        ObjectiveVector vec;
    };

    enum class Insert {
        Inserted,
        RejectedDominated,  // an existing vector strictly dominates the candidate
        RejectedDuplicate,  // an existing entry already attains this vector
    };

    struct InsertOutcome {
        Insert result;
        size_t evicted = 0;
        bool changed() const { return result == Insert::Inserted; }
    };

    InsertOutcome insert(Assignment tuple, ObjectiveVector vec) {
        for (const Entry& e : entries_) {
            if (e.vec == vec) return {Insert::RejectedDuplicate, 0};
            if (strictly_dominates(e.vec, vec)) return {Insert::RejectedDominated, 0};
        }
        size_t evicted = 0;
        for (size_t i = entries_.size(); i-- > 0;) {
            if (weakly_dominates(vec, entries_[i].vec)) {
                entries_.erase(entries_.begin() + static_cast<ptrdiff_t>(i));
                ++evicted;
            }
        }
        entries_.push_back({std::move(tuple), std::move(vec)});
        return {Insert::Inserted, evicted};
    }

    const std::vector<Entry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    void clear() { entries_.clear(); }

    std::vector<ObjectiveVector> vectors() const {
        std::vector<ObjectiveVector> out;
        out.reserve(entries_.size());
        for (const Entry& e : entries_) out.push_back(e.vec);
        return out;
    }

private:
    std::vector<Entry> entries_;
};

//=============================================================================
// Solve results
//=============================================================================

enum class SolveStatus { Complete, TimeoutPartial };

inline const char* to_string(SolveStatus s) {
    return s == SolveStatus::Complete ? "complete" : "timeout-partial";
}

struct SolveStats {
    uint64_t sat_calls = 0;     // SAT oracle invocations
    uint64_t cores = 0;         // unsatisfiable cores processed
    uint64_t models = 0;        // satisfying models seen
    uint64_t inner_loops = 0;   // fence phases (core-guided)
    uint64_t relax_rounds = 0;  // relaxation iterations (hitting sets)
    uint64_t chain_steps = 0;   // descent steps (p-minimal)
    uint64_t rounds = 0;        // stratification rounds
    double wall_ms = 0.0;

    void absorb(const SolveStats& o) {
        sat_calls += o.sat_calls;
        cores += o.cores;
        models += o.models;
        inner_loops += o.inner_loops;
        relax_rounds += o.relax_rounds;
        chain_steps += o.chain_steps;
        rounds += o.rounds;
    }
};

// Final (or partial) front: arg_front[i] attains img_front[i]; entries sorted
// lexicographically by objective vector, vectors pairwise distinct.
struct ParetoResult {
    std::vector<Assignment> arg_front;
    std::vector<ObjectiveVector> img_front;
    SolveStatus status = SolveStatus::Complete;
    SolveStats stats;
};

inline ParetoResult make_result(const Archive& archive, SolveStatus status,
                                SolveStats stats = {}) {
    std::vector<const Archive::Entry*> order;
    order.reserve(archive.size());
    for (const auto& e : archive.entries()) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const Archive::Entry* a, const Archive::Entry* b) {
                  if (a->vec != b->vec) return a->vec < b->vec;
                  return a->tuple < b->tuple;
              });
    ParetoResult r;
    r.status = status;
    r.stats = stats;
    r.arg_front.reserve(order.size());
    r.img_front.reserve(order.size());
    for (const Archive::Entry* e : order) {
        r.arg_front.push_back(e->tuple);
        r.img_front.push_back(e->vec);
    }
    return r;
}

}  // namespace moco
