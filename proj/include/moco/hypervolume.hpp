#pragma once

#include <cstdint>
#include <vector>

#include "moco/types.hpp"

namespace moco {

//==============================================================================
// Hypervolume indicator for minimization fronts.
//
// All points live in Z^m with "smaller is better" in every coordinate.  The
// raw value is the Lebesgue measure of the region dominated by the front and
// bounded above by a reference point.  The normalized value divides by the
// volume of the box [ideal, ref); a front matching the reference front's
// extremes scores close to 1.
//==============================================================================

// Drops duplicates and strictly dominated points; output sorted.
std::vector<ObjectiveVector> nondominated_filter(std::vector<ObjectiveVector> points);

struct ReferenceFront {
    std::vector<ObjectiveVector> points; // nondominated union of all fronts seen
    ObjectiveVector ideal;               // per-dimension minimum over points
    ObjectiveVector ref_point;           // per-dimension maximum over points, + 1
};

// Union of several fronts.  Throws std::invalid_argument if every front is
// empty (no geometry to reference) or dimensions disagree.
ReferenceFront build_reference_front(const std::vector<std::vector<ObjectiveVector>>& fronts);

struct HvResult {
    double raw = 0.0;        // measure of the dominated region below ref_point
    double normalized = 0.0; // raw / volume of [ideal, ref_point)
    bool exact = true;       // false when estimated by sampling (m >= 5)
};

// Exact dominated volume of `points` against `ref`.  Points not strictly
// below ref in every coordinate contribute nothing.  Exact up to m = 4;
// beyond that a fixed-seed Monte Carlo estimate is returned.
double hv_raw(std::vector<ObjectiveVector> points, const ObjectiveVector& ref);

// Monte Carlo estimate of the same quantity (any m >= 1).
double hv_monte_carlo(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref,
                      uint64_t samples, uint64_t seed);

// Full evaluation against a reference frame: clips points up to the ideal,
// normalizes by the box volume.  Degenerate box (zero volume): normalized is
// 0 when raw is 0, else 1.
HvResult hypervolume(const std::vector<ObjectiveVector>& front, const ReferenceFront& ref);

}  // namespace moco
