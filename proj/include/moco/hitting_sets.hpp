#pragma once

#include <memory>

#include "moco/engine.hpp"
#include "moco/sat_solver.hpp"

namespace moco {

// Implicit hitting set search: an initially empty relaxation R of the
// constraints is solved exactly, each point of the relaxed front is checked
// against the real constraints under full-polarity assumptions, and the
// negated cores tighten R until the whole relaxed front is feasible.
class HittingSetsEngine final : public MocoEngine {
public:
    // The inner exact engine is injectable; defaults to core-guided search.
    explicit HittingSetsEngine(std::unique_ptr<MocoEngine> inner = nullptr);

    ParetoResult solve(const MocoInstance& inst, const EngineConfig& cfg,
                       EngineObserver* obs = nullptr) override;

    std::string name() const override { return "hitting-sets"; }

    // One assumption literal per variable, with the model's polarity.
    static std::vector<Lit> model_assumptions(const Assignment& x);

    // Solves the constraint formula under the model's assumptions. Returns
    // nothing when feasible; otherwise a core (subset of the assumptions,
    // empty exactly when the constraints alone are unsatisfiable).
    static std::optional<std::vector<Lit>> check_feasible(SatSolver& constraint_solver,
                                                          const Assignment& x);

    // Appends the negated cores of one diagnosis to R; returns the clauses
    // actually added (duplicates within the diagnosis are collapsed).
    static std::vector<Clause> tighten(std::vector<Clause>& relaxation,
                                       const std::vector<std::vector<Lit>>& diagnosis);

private:
    std::unique_ptr<MocoEngine> inner_;
};

}  // namespace moco
