#include "moco/hitting_sets.hpp"

#include <algorithm>
#include <set>

#include "moco/encoder.hpp"
#include "moco/unsat_sat.hpp"

namespace moco {

HittingSetsEngine::HittingSetsEngine(std::unique_ptr<MocoEngine> inner)
    : inner_(std::move(inner)) {
    if (!inner_) inner_ = std::make_unique<UnsatSatEngine>(false);
}

std::vector<Lit> HittingSetsEngine::model_assumptions(const Assignment& x) {
    std::vector<Lit> out;
    out.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        out.push_back(mk_lit(static_cast<int>(i) + 1, !x[i]));
    return out;
}

std::optional<std::vector<Lit>> HittingSetsEngine::check_feasible(SatSolver& constraint_solver,
                                                                  const Assignment& x) {
    SolveResult res = constraint_solver.solve(model_assumptions(x));
    if (res.sat) return std::nullopt;
    return res.core;
}

std::vector<Clause> HittingSetsEngine::tighten(std::vector<Clause>& relaxation,
                                               const std::vector<std::vector<Lit>>& diagnosis) {
    std::set<Clause> seen;
    std::vector<Clause> added;
    for (const std::vector<Lit>& core : diagnosis) {
        Clause c;
        c.reserve(core.size());
        for (Lit l : core) c.push_back(~l);
        std::sort(c.begin(), c.end());
        if (!seen.insert(c).second) continue;
        relaxation.push_back(c);
        added.push_back(std::move(c));
    }
    return added;
}

ParetoResult HittingSetsEngine::solve(const MocoInstance& inst, const EngineConfig& cfg,
                                      EngineObserver* obs) {
    auto t0 = std::chrono::steady_clock::now();

    // Dedicated constraint-only solver, reused incrementally across all checks.
    SatSolver feas;
    {
        int next_var = inst.num_vars;
        CnfFormula f = encode_constraints(inst, next_var);
        f.ensure_var(inst.num_vars);
        load_formula(feas, f);
        feas.ensure_vars(inst.num_vars);
    }
    if (cfg.deadline || cfg.interrupt)
        feas.set_interrupt([&cfg] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); });

    SolveStats st;
    Archive verified;  // feasible lower-bound points: already Pareto-optimal
    std::vector<Clause> relaxation;
    bool complete = false;
    ParetoResult relaxed;

    // every round either finishes or strictly shrinks the relaxed solution
    // set, so rounds are bounded by the assignment count
    const uint64_t round_cap =
        inst.num_vars >= 62 ? UINT64_MAX : (uint64_t{2} << inst.num_vars);

    auto stop = [&] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); };
    bool timed_out = false;

    try {
        while (!complete && !timed_out) {
            if (stop()) { timed_out = true; break; }
            if (st.relax_rounds >= round_cap)
                throw std::logic_error("relaxation failed to converge");
            st.relax_rounds++;

            MocoInstance relaxed_inst;
            relaxed_inst.num_vars = inst.num_vars;
            relaxed_inst.clause_constraints = relaxation;
            relaxed_inst.objectives = inst.objectives;

            EngineConfig inner_cfg = cfg;
            inner_cfg.anytime_strict = false;
            relaxed = inner_->solve(relaxed_inst, inner_cfg, nullptr);
            st.absorb(relaxed.stats);
            if (relaxed.status != SolveStatus::Complete) {
                timed_out = true;
                break;
            }

            std::vector<std::vector<Lit>> diagnosis;
            bool round_timed_out = false;
            for (size_t i = 0; i < relaxed.arg_front.size(); ++i) {
                if (stop()) { round_timed_out = true; break; }
                st.sat_calls++;
                std::optional<std::vector<Lit>> core =
                    check_feasible(feas, relaxed.arg_front[i]);
                if (!core) {
                    assert(inst.feasible(relaxed.arg_front[i]));
                    bool changed = verified
                                       .insert(relaxed.arg_front[i], relaxed.img_front[i])
                                       .changed();
                    if (changed && obs) obs->on_archive_change(verified);
                } else {
                    st.cores++;
                    diagnosis.push_back(std::move(*core));
                }
            }
            if (round_timed_out) { timed_out = true; break; }

            std::vector<Clause> added = tighten(relaxation, diagnosis);
            if (obs)
                obs->on_relaxation_round(relaxed.arg_front, relaxed.img_front,
                                         diagnosis.size(), added);
            if (diagnosis.empty()) complete = true;
        }
    } catch (const SolveInterrupted&) {
        timed_out = true;
    }

    ParetoResult result;
    if (complete) {
        // the final relaxed front is feasible throughout, hence exact
        result = std::move(relaxed);
        result.status = SolveStatus::Complete;
        result.stats = st;
    } else {
        result = make_result(verified, SolveStatus::TimeoutPartial, st);
    }
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace moco
