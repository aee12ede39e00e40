#pragma once

// Shared helpers for the test suite: small instance builders plus slow,
// independent reference implementations used to cross-check the real code.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "moco/generator.hpp"
#include "moco/opb.hpp"
#include "moco/types.hpp"

namespace testsupport {

using namespace moco;

//------------------------------------------------------------------------------
// instance builders
//------------------------------------------------------------------------------

// x1 + x2 = 1 with objectives f1 = x1, f2 = x2: front {(0,1), (1,0)}.
inline MocoInstance complementary_units() {
    MocoInstance inst;
    inst.num_vars = 2;
    inst.constraints.push_back(
        PbConstraint::make({{1, mk_lit(1)}, {1, mk_lit(2)}}, PbRel::Equal, 1));
    inst.objectives.push_back(ObjectiveFunction::make({{1, mk_lit(1)}}));
    inst.objectives.push_back(ObjectiveFunction::make({{1, mk_lit(2)}}));
    return inst;
}

// x1 >= 1 and x1 <= 0: no feasible assignment.
inline MocoInstance infeasible_pair() {
    MocoInstance inst;
    inst.num_vars = 1;
    inst.constraints.push_back(PbConstraint::make({{1, mk_lit(1)}}, PbRel::GreaterEq, 1));
    inst.constraints.push_back(PbConstraint::make({{1, mk_lit(1)}}, PbRel::LessEq, 0));
    inst.objectives.push_back(ObjectiveFunction::make({{1, mk_lit(1)}}));
    return inst;
}

inline MocoInstance gen_pb_instance(uint64_t seed, int vars = 8, int cons = 5, int m = 2) {
    RandomPbParams p;
    p.num_vars = vars;
    p.num_constraints = cons;
    p.m = m;
    p.seed = seed;
    return to_instance(generate_random_pb(p));
}

inline MocoInstance gen_sc_instance(uint64_t seed, int elements = 6, int sets = 8, int m = 2) {
    SetCoverParams p;
    p.n_elements = elements;
    p.n_sets = sets;
    p.m = m;
    p.seed = seed;
    return to_instance(generate_set_cover(p));
}

//------------------------------------------------------------------------------
// independent reference implementations
//------------------------------------------------------------------------------

// All sums attainable by picking a subset of the weights (sorted, includes 0).
inline std::vector<int64_t> subset_sums(const std::vector<int64_t>& weights) {
    std::set<int64_t> sums{0};
    for (int64_t w : weights) {
        std::set<int64_t> grown = sums;
        for (int64_t s : sums) grown.insert(s + w);
        sums = std::move(grown);
    }
    return {sums.begin(), sums.end()};
}

// Truth-table satisfiability over all num_vars variables; only usable for
// small formulas.
inline bool tt_satisfiable(const CnfFormula& f) {
    const int n = f.num_vars;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        Assignment a(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = (mask >> i) & 1;
        bool ok = true;
        for (const Clause& c : f.clauses)
            if (!clause_satisfied(c, a)) { ok = false; break; }
        if (ok) return true;
    }
    return f.clauses.empty() && n == 0;
}

// Quadratic nondominated filter (duplicates removed), independent of the
// library's version.
inline std::vector<ObjectiveVector> slow_front(std::vector<ObjectiveVector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<ObjectiveVector> out;
    for (const auto& p : pts) {
        bool dom = false;
        for (const auto& q : pts)
            if (q != p && weakly_dominates(q, p)) { dom = true; break; }
        if (!dom) out.push_back(p);
    }
    return out;
}

// Exact dominated volume by inclusion-exclusion over the union of boxes
// [p, ref). Exponential in the point count; fine for <= ~15 points.
inline double ie_hypervolume(const std::vector<ObjectiveVector>& pts,
                             const ObjectiveVector& ref) {
    std::vector<ObjectiveVector> in;
    for (const auto& p : pts) {
        bool below = true;
        for (size_t i = 0; i < ref.size(); ++i)
            if (p[i] >= ref[i]) { below = false; break; }
        if (below) in.push_back(p);
    }
    const size_t n = in.size();
    double vol = 0.0;
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
        ObjectiveVector corner(ref.size(), INT64_MIN);
        int bits = 0;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                ++bits;
                for (size_t d = 0; d < ref.size(); ++d)
                    corner[d] = std::max(corner[d], in[i][d]);
            }
        double box = 1.0;
        for (size_t d = 0; d < ref.size(); ++d)
            box *= static_cast<double>(std::max<int64_t>(ref[d] - corner[d], 0));
        vol += (bits % 2 == 1 ? 1.0 : -1.0) * box;
    }
    return vol;
}

}  // namespace testsupport
