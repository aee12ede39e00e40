#pragma once

#include "moco/types.hpp"

namespace moco {

//==============================================================================
// Exhaustive reference solver: enumerates all 2^n assignments.
// Intended for cross-checking the SAT-based engines on small instances.
//==============================================================================

struct OracleConfig {
    int var_cap = 20;           // refuse instances with more variables than this
    bool keep_feasible = false; // also retain every feasible objective vector
};

struct OracleResult {
    bool feasible = false;           // any satisfying assignment at all
    std::vector<ObjectiveVector> img_front; // nondominated vectors, sorted
    std::vector<Assignment> arg_front;      // lexicographically least witness per vector
    std::vector<ObjectiveVector> feasible_vectors; // only when keep_feasible
};

// Throws std::invalid_argument when inst.num_vars exceeds cfg.var_cap.
OracleResult exact_front(const MocoInstance& inst, const OracleConfig& cfg = {});

}  // namespace moco
