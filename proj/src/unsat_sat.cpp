#include "moco/unsat_sat.hpp"

#include <algorithm>

#include "moco/sat_solver.hpp"

namespace moco {

namespace {

struct CoreRunOutcome {
    Archive archive;
    SolveStats stats;
    bool complete = false;
};

Assignment project_model(const SolveResult& res, int num_vars) {
    Assignment x(static_cast<size_t>(num_vars));
    for (int v = 1; v <= num_vars; ++v) x[static_cast<size_t>(v - 1)] = res.model[static_cast<size_t>(v)];
    return x;
}

// One full fence ascent over `inst`. Seeds (from an earlier stratification
// round) are re-evaluated under the current objectives before insertion; they
// are not blocked in the formula, so rediscovery is handled by the archive.
CoreRunOutcome run_core(const MocoInstance& inst, const EngineConfig& cfg,
                        EngineObserver* obs, const std::vector<Archive::Entry>* seeds) {
    const size_t m = inst.objectives.size();
    EncodedInstance enc = encode(inst);
    SolverConfig scfg;
    scfg.seed = cfg.seed;
    scfg.minimize_cores = cfg.minimize_cores;
    SatSolver solver(scfg);
    load_formula(solver, enc.cnf);
    if (cfg.deadline || cfg.interrupt)
        solver.set_interrupt([&cfg] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); });

    CoreRunOutcome out;
    Archive& archive = out.archive;
    Archive staging;
    SolveStats& st = out.stats;
    std::vector<ObjectiveVector> blocked;
    ObjectiveVector fence(m, 0);

    if (seeds) {
        std::vector<Archive::Entry> ordered = *seeds;
        for (Archive::Entry& e : ordered) e.vec = evaluate(inst.objectives, e.tuple);
        std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            if (a.vec != b.vec) return a.vec < b.vec;
            return a.tuple < b.tuple;
        });
        bool changed = false;
        for (Archive::Entry& e : ordered)
            changed |= archive.insert(std::move(e.tuple), std::move(e.vec)).changed();
        if (changed && obs) obs->on_archive_change(archive);
    }

    auto stop = [&] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); };
    bool timed_out = false;

    try {
        while (!out.complete && !timed_out) {
            if (stop()) { timed_out = true; break; }
            if (obs) obs->on_outer_head(fence, archive, blocked);
            std::vector<FenceAssumption> fa =
                fence_assumptions(enc, fence, cfg.fence_step_plus_one);
            std::vector<Lit> assumptions;
            assumptions.reserve(fa.size());
            for (const FenceAssumption& a : fa) assumptions.push_back(a.lit);
            st.inner_loops++;

            std::vector<Lit> core;
            bool have_core = false;
            while (true) {
                if (stop()) { timed_out = true; break; }
                SolveResult res = solver.solve(assumptions);
                st.sat_calls++;
                if (!res.sat) {
                    core = std::move(res.core);
                    have_core = true;
                    st.cores++;
                    break;
                }
                st.models++;
                Assignment x = project_model(res, inst.num_vars);
                ObjectiveVector y = evaluate(inst.objectives, x);
#ifndef NDEBUG
                assert(inst.feasible(x));
                for (const FenceAssumption& a : fa) assert(y[a.obj] < a.value);
#endif
                Archive& target = cfg.anytime_strict ? staging : archive;
                target.insert(x, y);
                if (!cfg.anytime_strict && obs) obs->on_archive_change(archive);
                blocked.push_back(y);
                solver.add_clause(dominance_blocking_clause(enc, y));
                if (obs) {
                    if (cfg.anytime_strict) {
                        Archive combined = archive;
                        for (const Archive::Entry& e : staging.entries())
                            combined.insert(e.tuple, e.vec);
                        obs->on_inner_model(combined, blocked);
                    } else {
                        obs->on_inner_model(archive, blocked);
                    }
                }
            }
            if (!have_core) continue;  // timed out mid-phase; staged models stay unproven

            if (cfg.anytime_strict && !staging.empty()) {
                std::vector<Archive::Entry> ordered = staging.entries();
                std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
                    return a.vec < b.vec;
                });
                for (Archive::Entry& e : ordered) {
                    auto outcome = archive.insert(std::move(e.tuple), std::move(e.vec));
                    assert(outcome.result == Archive::Insert::Inserted);
                    (void)outcome;
                }
                staging.clear();
                if (obs) obs->on_archive_change(archive);
            }
            if (core.empty()) {
                out.complete = true;
            } else {
                bump_fence(fence, core, fa);
                if (obs) obs->on_fence_bump(fence);
            }
        }
    } catch (const SolveInterrupted&) {
        timed_out = true;
    }
    return out;
}

// Forwards events from a stratification round, re-expressing archive
// snapshots under the full objectives so anytime traces stay comparable.
struct StratObserverAdapter final : EngineObserver {
    EngineObserver* inner = nullptr;
    const MultiObjective* full = nullptr;

    void on_archive_change(const Archive& a) override {
        Archive reexpressed;
        std::vector<Archive::Entry> ordered = a.entries();
        for (Archive::Entry& e : ordered) e.vec = evaluate(*full, e.tuple);
        std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
            if (x.vec != y.vec) return x.vec < y.vec;
            return x.tuple < y.tuple;
        });
        for (Archive::Entry& e : ordered)
            reexpressed.insert(std::move(e.tuple), std::move(e.vec));
        inner->on_archive_change(reexpressed);
    }
    void on_outer_head(const ObjectiveVector& f, const Archive& a,
                       const std::vector<ObjectiveVector>& b) override {
        inner->on_outer_head(f, a, b);
    }
    void on_inner_model(const Archive& a, const std::vector<ObjectiveVector>& b) override {
        inner->on_inner_model(a, b);
    }
    void on_fence_bump(const ObjectiveVector& f) override { inner->on_fence_bump(f); }
};

}  // namespace

std::vector<std::vector<PbTerm>> UnsatSatEngine::partition_terms(const ObjectiveFunction& f,
                                                                 const StratParams& p) {
    std::vector<PbTerm> terms = f.terms;
    std::sort(terms.begin(), terms.end(), [](const PbTerm& a, const PbTerm& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return var_of(a.lit) < var_of(b.lit);
    });
    std::vector<std::vector<PbTerm>> parts;
    std::vector<PbTerm> cur;
    int64_t prev_w = 0;
    for (const PbTerm& t : terms) {
        bool close = false;
        if (!cur.empty()) {
            if (t.weight != prev_w &&
                static_cast<double>(prev_w) / static_cast<double>(t.weight) > p.ratio_threshold)
                close = true;
            if (static_cast<int>(cur.size()) >= p.size_cap) close = true;
        }
        if (close) {
            parts.push_back(std::move(cur));
            cur.clear();
        }
        cur.push_back(t);
        prev_w = t.weight;
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

std::vector<MultiObjective> UnsatSatEngine::strat_schedule(const MultiObjective& objectives,
                                                           const StratParams& p) {
    std::vector<std::vector<std::vector<PbTerm>>> parts;
    size_t rounds = 1;
    for (const ObjectiveFunction& f : objectives) {
        parts.push_back(partition_terms(f, p));
        rounds = std::max(rounds, parts.back().size());
    }
    std::vector<MultiObjective> schedule;
    for (size_t r = 1; r <= rounds; ++r) {
        MultiObjective row;
        for (size_t i = 0; i < objectives.size(); ++i) {
            std::vector<PbTerm> acc;
            for (size_t k = 0; k < std::min(r, parts[i].size()); ++k)
                acc.insert(acc.end(), parts[i][k].begin(), parts[i][k].end());
            row.push_back(ObjectiveFunction::make(acc, objectives[i].offset));
        }
        schedule.push_back(std::move(row));
    }
    return schedule;
}

ParetoResult UnsatSatEngine::solve(const MocoInstance& inst, const EngineConfig& cfg,
                                   EngineObserver* obs) {
    auto t0 = std::chrono::steady_clock::now();
    ParetoResult result;

    if (!stratified_) {
        CoreRunOutcome out = run_core(inst, cfg, obs, nullptr);
        result = make_result(out.archive,
                             out.complete ? SolveStatus::Complete : SolveStatus::TimeoutPartial,
                             out.stats);
    } else {
        std::vector<MultiObjective> schedule = strat_schedule(inst.objectives, cfg.strat);
        StratObserverAdapter adapter;
        adapter.inner = obs;
        adapter.full = &inst.objectives;

        SolveStats total;
        Archive carry;
        bool complete = true;
        for (size_t r = 0; r < schedule.size(); ++r) {
            if (obs) obs->on_strat_round(r + 1, schedule.size(), schedule[r]);
            MocoInstance round_inst = inst;
            round_inst.objectives = schedule[r];
            std::vector<Archive::Entry> seeds = carry.entries();
            CoreRunOutcome out = run_core(round_inst, cfg, obs ? &adapter : nullptr,
                                          seeds.empty() ? nullptr : &seeds);
            total.absorb(out.stats);
            total.rounds++;
            carry = std::move(out.archive);
            if (!out.complete) {
                complete = false;
                break;
            }
        }
        if (!complete) {
            // partial rounds report in reduced space: re-express and re-filter
            Archive full_space;
            std::vector<Archive::Entry> ordered = carry.entries();
            for (Archive::Entry& e : ordered) e.vec = evaluate(inst.objectives, e.tuple);
            std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
                if (a.vec != b.vec) return a.vec < b.vec;
                return a.tuple < b.tuple;
            });
            for (Archive::Entry& e : ordered)
                full_space.insert(std::move(e.tuple), std::move(e.vec));
            carry = std::move(full_space);
        }
        result = make_result(carry, complete ? SolveStatus::Complete : SolveStatus::TimeoutPartial,
                             total);
    }

    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace moco
