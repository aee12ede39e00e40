#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "moco/types.hpp"

namespace moco {

struct SolverConfig {
    uint64_t seed = 0;          // 0: plain index tie-breaking; else jitters initial activities
    bool minimize_cores = false;
    double var_decay = 0.95;
    double clause_decay = 0.999;
    int restart_first = 100;    // geometric restart series
    double restart_inc = 1.5;
};

// Thrown from solve() when the interrupt callback fires; the solver backtracks
// to a clean state first and stays usable.
struct SolveInterrupted : std::runtime_error {
    SolveInterrupted() : std::runtime_error("solve interrupted") {}
};

struct SolveResult {
    bool sat = false;
    // Total model, indexed by variable (index 0 unused). Valid when sat.
    std::vector<bool> model;
    // Subset of the assumption literals whose conjunction with the clause
    // database is unsatisfiable. Empty iff the database alone is unsatisfiable.
    std::vector<Lit> core;

    bool model_value(Lit l) const { return model[var_of(l)] != is_neg(l); }
};

//=============================================================================
// CDCL solver with incremental assumptions
//=============================================================================

class SatSolver {
public:
    explicit SatSolver(SolverConfig cfg = {});

    int new_var();
    void ensure_vars(int n);
    int num_vars() const { return nvars_; }

    // Monotone: clauses are never retracted. Adding the empty clause (or
    // deriving one) makes the solver permanently unsatisfiable, which is legal.
    void add_clause(Clause c);
    void add_clause(std::initializer_list<Lit> ls) { add_clause(Clause(ls)); }

    SolveResult solve(const std::vector<Lit>& assumptions = {});

    // Assumption-enqueue plus unit propagation only, no search and no learning.
    // Returns the propagated partial assignment by variable (0 unset, 1 true,
    // -1 false), or nullopt on a propagation conflict.
    std::optional<std::vector<int8_t>> propagate_probe(const std::vector<Lit>& assumptions);

    bool okay() const { return ok_; }

    // Polled about once every 1024 conflicts; returning true aborts the
    // current solve with SolveInterrupted. Resource policy lives with callers.
    void set_interrupt(std::function<bool()> cb) { interrupt_ = std::move(cb); }

    struct Stats {
        uint64_t solves = 0;
        uint64_t conflicts = 0;
        uint64_t decisions = 0;
        uint64_t propagations = 0;
        uint64_t learned = 0;
        uint64_t removed = 0;
        uint64_t restarts = 0;
    };
    const Stats& stats() const { return stats_; }

    // "p cnf" ingestion; throws std::runtime_error on malformed input.
    void load_dimacs(std::istream& in);

private:
    enum : int8_t { kUndef = 0, kTrue = 1, kFalse = -1 };
    static constexpr int kNoReason = -1;

    struct ClauseRec {
        std::vector<Lit> lits;
        double activity = 0.0;
        bool learnt = false;
        bool deleted = false;
    };

    struct Watcher {
        int cref;
        Lit blocker;
    };

    // ---- state ----
    SolverConfig cfg_;
    bool ok_ = true;
    int nvars_ = 0;
    std::vector<ClauseRec> db_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by lit code
    std::vector<int8_t> assigns_;                // by var
    std::vector<int> level_;                     // by var
    std::vector<int> reason_;                    // by var, cref or kNoReason
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::vector<uint8_t> polarity_;  // saved phase, 1 = last value true
    std::vector<uint8_t> seen_;
    std::vector<int> heap_;          // max-heap over activity; heap_pos_ by var
    std::vector<int> heap_pos_;
    size_t num_learnts_ = 0;
    double max_learnts_ = 4000.0;
    uint64_t reduce_count_ = 0;
    std::function<bool()> interrupt_;
    Stats stats_;

    // ---- helpers ----
    int8_t value_var(int v) const { return assigns_[v]; }
    int8_t value(Lit l) const {
        int8_t a = assigns_[var_of(l)];
        return is_neg(l) ? static_cast<int8_t>(-a) : a;  // -kUndef == kUndef
    }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    bool locked(int cref) const {
        const auto& c = db_[cref].lits;
        return !c.empty() && value(c[0]) == kTrue && reason_[var_of(c[0])] == cref;
    }

    void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
    void enqueue(Lit p, int from);
    int propagate();  // returns conflicting cref or kNoReason
    void attach(int cref);
    void cancel_until(int lvl);

    void analyze(int confl, Clause& out_learnt, int& out_btlevel);
    bool lit_redundant(Lit p);
    std::vector<Lit> analyze_final(Lit failed);

    void var_bump(int v);
    void var_decay_all();
    void cla_bump(int cref);
    void cla_decay_all();

    void heap_insert(int v);
    void heap_update(int v);
    int heap_pop();
    bool heap_less(int a, int b) const;
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);

    Lit pick_branch();
    void reduce_db();

    // Undef: restart budget exhausted.
    enum class SearchStatus { Sat, Unsat, Undef };
    SearchStatus search(int64_t conflict_budget, const std::vector<Lit>& assumptions,
                        std::vector<Lit>& out_core);
    SolveResult solve_internal(const std::vector<Lit>& assumptions);
    std::vector<Lit> minimize_core(std::vector<Lit> core);
};

// Loads a CNF into a solver: raises the variable watermark and adds every clause.
inline void load_formula(SatSolver& s, const CnfFormula& f) {
    s.ensure_vars(f.num_vars);
    for (const Clause& c : f.clauses) s.add_clause(c);
}

}  // namespace moco
