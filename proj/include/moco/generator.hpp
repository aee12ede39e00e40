#pragma once

#include <cstdint>

#include "moco/opb.hpp"

namespace moco {

//==============================================================================
// Deterministic benchmark instance generators. Same parameters -> the same
// document, byte for byte, on every platform.
//==============================================================================

// Multi-objective weighted set cover: pick sets covering every element, with
// m independent cost functions to minimize.
struct SetCoverParams {
    int n_elements = 6;
    int n_sets = 8;
    int m = 2;            // number of objectives
    double density = 0.4; // probability a given set covers a given element
    int weight_max = 5;   // set costs drawn uniformly from [1, weight_max]
    uint64_t seed = 0;
    int max_resample = 1000; // retries per element before giving up
};

// Throws std::runtime_error when an element cannot be covered (n_sets == 0 or
// the density never produced a covering row within max_resample tries).
MoOpbDocument generate_set_cover(const SetCoverParams& p);

// Unstructured pseudo-Boolean instances: random small constraints over random
// literals, random <= / >= relations, objectives over half the variables.
struct RandomPbParams {
    int num_vars = 8;
    int num_constraints = 6;
    int m = 2;
    int weight_max = 5;
    int max_terms = 4; // per constraint
    uint64_t seed = 0;
};

MoOpbDocument generate_random_pb(const RandomPbParams& p);

}  // namespace moco
