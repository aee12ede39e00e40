#include "moco/engine.hpp"

#include <stdexcept>

#include "moco/hitting_sets.hpp"
#include "moco/p_minimal.hpp"
#include "moco/unsat_sat.hpp"

namespace moco {

std::vector<FenceAssumption> fence_assumptions(const EncodedInstance& enc,
                                               const ObjectiveVector& fence,
                                               bool step_plus_one) {
    assert(fence.size() == enc.num_objectives());
    std::vector<FenceAssumption> out;
    for (size_t i = 0; i < fence.size(); ++i) {
        std::optional<int64_t> next;
        if (step_plus_one) {
            if (fence[i] + 1 <= enc.counters[i].upper_bound) next = fence[i] + 1;
        } else {
            next = enc.next_value(i, fence[i]);
        }
        if (!next) continue;  // fence already at the top: objective unrestricted
        std::optional<Lit> o = enc.order_var(i, *next);
        assert(o && "threshold within bounds must have an order literal");
        out.push_back({~*o, i, *next});
    }
    return out;
}

Clause dominance_blocking_clause(const EncodedInstance& enc, const ObjectiveVector& y) {
    assert(y.size() == enc.num_objectives());
    Clause c;
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] <= 0) continue;
        std::optional<Lit> o = enc.order_var(i, y[i]);
        assert(o && "attained value must have an order literal");
        c.push_back(~*o);
    }
    return c;
}

void bump_fence(ObjectiveVector& fence, const std::vector<Lit>& core,
                const std::vector<FenceAssumption>& assumptions) {
    for (Lit l : core) {
        for (const FenceAssumption& a : assumptions) {
            if (a.lit == l) {
                assert(a.value > fence[a.obj]);
                fence[a.obj] = a.value;
                break;
            }
        }
    }
}

std::unique_ptr<MocoEngine> make_engine(const std::string& name) {
    if (name == "core-guided") return std::make_unique<UnsatSatEngine>(false);
    if (name == "core-guided-strat") return std::make_unique<UnsatSatEngine>(true);
    if (name == "hitting-sets") return std::make_unique<HittingSetsEngine>();
    if (name == "p-minimal") return std::make_unique<PMinimalEngine>();
    throw std::invalid_argument("unknown engine: " + name);
}

std::vector<std::string> engine_names() {
    return {"core-guided", "core-guided-strat", "hitting-sets", "p-minimal"};
}

}  // namespace moco
