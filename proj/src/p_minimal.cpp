#include "moco/p_minimal.hpp"

#include <cassert>
#include <chrono>

#include "moco/sat_solver.hpp"

namespace moco {

ParetoResult PMinimalEngine::solve(const MocoInstance& inst, const EngineConfig& cfg,
                                   EngineObserver* obs) {
    auto t0 = std::chrono::steady_clock::now();
    EncodedInstance enc = encode(inst);
    SolverConfig scfg;
    scfg.seed = cfg.seed;
    SatSolver solver(scfg);
    load_formula(solver, enc.cnf);
    if (cfg.deadline || cfg.interrupt)
        solver.set_interrupt([&cfg] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); });

    Archive archive;
    SolveStats st;
    bool complete = false;
    auto stop = [&] { return cfg.out_of_time() || (cfg.interrupt && cfg.interrupt()); };
    bool timed_out = false;

    try {
        while (!complete && !timed_out) {
            if (stop()) { timed_out = true; break; }
            SolveResult res = solver.solve({});
            st.sat_calls++;
            if (!res.sat) {
                // no assumptions: the blocked space is exhausted
                complete = true;
                break;
            }
            st.models++;
            Assignment x(static_cast<size_t>(inst.num_vars));
            for (int v = 1; v <= inst.num_vars; ++v)
                x[static_cast<size_t>(v - 1)] = res.model[static_cast<size_t>(v)];
            ObjectiveVector y = evaluate(inst.objectives, x);

            // descend: each step's constraints live behind one fresh selector
            // so the clause database stays monotone
            int selector = solver.new_var();
            bool minimal = false;
            while (!minimal && !timed_out) {
                if (stop()) { timed_out = true; break; }
                Clause improve = dominance_blocking_clause(enc, y);
                improve.push_back(mk_lit(selector, true));
                solver.add_clause(std::move(improve));

                std::vector<FenceAssumption> fa =
                    fence_assumptions(enc, y, cfg.fence_step_plus_one);
                std::vector<Lit> assumptions{mk_lit(selector, false)};
                for (const FenceAssumption& a : fa) assumptions.push_back(a.lit);

                SolveResult step = solver.solve(assumptions);
                st.sat_calls++;
                if (!step.sat) {
                    minimal = true;
                    break;
                }
                st.models++;
                st.chain_steps++;
                Assignment x2(static_cast<size_t>(inst.num_vars));
                for (int v = 1; v <= inst.num_vars; ++v)
                    x2[static_cast<size_t>(v - 1)] = step.model[static_cast<size_t>(v)];
                ObjectiveVector y2 = evaluate(inst.objectives, x2);
                assert(strictly_dominates(y2, y));
                if (obs) obs->on_chain_step(y, y2);
                x = std::move(x2);
                y = std::move(y2);
            }
            solver.add_clause({mk_lit(selector, true)});  // retire the chain
            if (!minimal) break;                          // timed out mid-descent

            auto outcome = archive.insert(x, y);
            assert(outcome.result == Archive::Insert::Inserted);
            (void)outcome;
            if (obs) obs->on_archive_change(archive);
            solver.add_clause(dominance_blocking_clause(enc, y));
        }
    } catch (const SolveInterrupted&) {
        timed_out = true;
    }

    ParetoResult result = make_result(
        archive, complete ? SolveStatus::Complete : SolveStatus::TimeoutPartial, st);
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace moco
