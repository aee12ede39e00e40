#pragma once

#include <string>
#include <vector>

#include "moco/archive.hpp"
#include "moco/types.hpp"

namespace moco {

//==============================================================================
// JSON reporting. Deterministic: same result -> same string. Timing and
// solver statistics are deliberately excluded from front_json so outputs can
// be compared byte for byte across runs; stats_json carries the rest.
//==============================================================================

// {"status", "objectives", "offsets", "img_front", "arg_front"} with objective
// offsets applied to the reported vectors.
std::string front_json(const ParetoResult& result, const MocoInstance& inst);

// Volatile per-run numbers: wall time, solver call counts, front size.
std::string stats_json(const ParetoResult& result);

// Reads the img_front of a front_json document (offsets already applied).
// Throws std::runtime_error on malformed input.
std::vector<ObjectiveVector> parse_front_json(const std::string& text);

}  // namespace moco
