#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moco/types.hpp"

namespace moco {

struct EncoderConfig {
    // Attainable-value tables are kept exact while the objective's upper bound
    // stays within this cap; beyond it next_value() falls back to v+1.
    int64_t attainable_cap = 1'000'000;
};

// Threshold outputs of one objective's unary counter. values` is the sorted
// list of attainable sums > 0; lits[j] is true in a model iff the objective
// value is >= values[j].
struct CounterOutputs {
    std::vector<int64_t> values;
    std::vector<Lit> lits;
    int64_t upper_bound = 0;
    bool exact_values = true;  // false once the cap suppressed the table
};

struct EncodedInstance {
    CnfFormula cnf;
    int num_original_vars = 0;
    std::vector<CounterOutputs> counters;  // one per objective

    size_t num_objectives() const { return counters.size(); }

    // Literal whose truth is "objective obj >= k". Absent when k <= 0 or k
    // exceeds the objective's upper bound. For unattainable k the literal of
    // the next attainable threshold is returned; the semantics coincide.
    std::optional<Lit> order_var(size_t obj, int64_t k) const {
        const CounterOutputs& c = counters[obj];
        if (k <= 0 || k > c.upper_bound) return std::nullopt;
        auto it = std::lower_bound(c.values.begin(), c.values.end(), k);
        if (it == c.values.end()) return std::nullopt;
        return c.lits[static_cast<size_t>(it - c.values.begin())];
    }

    // Smallest attainable objective value strictly above v; absent when none.
    // Falls back to v+1 when the attainable table was suppressed by the cap.
    std::optional<int64_t> next_value(size_t obj, int64_t v) const {
        const CounterOutputs& c = counters[obj];
        if (!c.exact_values) {
            if (v + 1 > c.upper_bound) return std::nullopt;
            return v + 1;
        }
        auto it = std::upper_bound(c.values.begin(), c.values.end(), v);
        if (it == c.values.end()) return std::nullopt;
        return *it;
    }
};

// CNF for one PB constraint (sequential weighted counter; single clauses and
// unit bundles where the bound makes that exact). Auxiliary variables are
// allocated from next_var, which is advanced. Trivially false constraints
// yield the empty clause; trivially true ones an empty fragment.
CnfFormula encode_pb_constraint(const PbConstraint& c, int& next_var);

// Constraint clauses only, no objective counters (used for pure feasibility
// solvers). next_var starts at instance.num_vars and ends at the watermark.
CnfFormula encode_constraints(const MocoInstance& inst, int& next_var);

// Full encoding: constraints plus one unary counter per objective.
EncodedInstance encode(const MocoInstance& inst, const EncoderConfig& cfg = {});

}  // namespace moco
