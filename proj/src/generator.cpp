#include "moco/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "moco/rng.hpp"

namespace moco {

MoOpbDocument generate_set_cover(const SetCoverParams& p) {
    if (p.n_elements < 1 || p.n_sets < 0 || p.m < 1 || p.weight_max < 1)
        throw std::runtime_error("generate_set_cover: bad parameters");
    Rng rng(p.seed);

    // variable j+1 <=> set j is picked
    MoOpbDocument doc;
    doc.declared_vars = p.n_sets;

    for (int obj = 0; obj < p.m; ++obj) {
        OpbObjective o;
        for (int j = 0; j < p.n_sets; ++j)
            o.terms.push_back({rng.uniform(1, p.weight_max), mk_lit(j + 1)});
        doc.objectives.push_back(std::move(o));
    }

    for (int e = 0; e < p.n_elements; ++e) {
        std::vector<int> covering;
        for (int attempt = 0;; ++attempt) {
            if (p.n_sets == 0 || attempt >= p.max_resample)
                throw std::runtime_error("generate_set_cover: element " + std::to_string(e) +
                                         " cannot be covered; raise density or set count");
            covering.clear();
            for (int j = 0; j < p.n_sets; ++j)
                if (rng.chance(p.density)) covering.push_back(j);
            if (!covering.empty()) break;
        }
        OpbConstraint c;
        for (int j : covering) c.terms.push_back({1, mk_lit(j + 1)});
        c.rel = PbRel::GreaterEq;
        c.bound = 1;
        doc.constraints.push_back(std::move(c));
    }
    return doc;
}

namespace {

// k distinct variables from 1..n, in random order (partial Fisher-Yates)
std::vector<int> pick_vars(Rng& rng, int n, int k) {
    std::vector<int> pool(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i + 1;
    std::vector<int> out;
    for (int i = 0; i < k; ++i) {
        int j = static_cast<int>(rng.uniform(i, n - 1));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        out.push_back(pool[static_cast<size_t>(i)]);
    }
    return out;
}

}  // namespace

MoOpbDocument generate_random_pb(const RandomPbParams& p) {
    if (p.num_vars < 1 || p.num_constraints < 0 || p.m < 1 || p.weight_max < 1 ||
        p.max_terms < 1)
        throw std::runtime_error("generate_random_pb: bad parameters");
    Rng rng(p.seed);

    MoOpbDocument doc;
    doc.declared_vars = p.num_vars;

    const int obj_terms = (p.num_vars + 1) / 2;
    for (int obj = 0; obj < p.m; ++obj) {
        OpbObjective o;
        for (int v : pick_vars(rng, p.num_vars, obj_terms)) {
            bool neg = rng.chance(0.5);
            o.terms.push_back({rng.uniform(1, p.weight_max), mk_lit(v, neg)});
        }
        doc.objectives.push_back(std::move(o));
    }

    for (int c = 0; c < p.num_constraints; ++c) {
        int k = static_cast<int>(rng.uniform(1, std::min(p.num_vars, p.max_terms)));
        OpbConstraint con;
        int64_t total = 0;
        for (int v : pick_vars(rng, p.num_vars, k)) {
            bool neg = rng.chance(0.5);
            int64_t w = rng.uniform(1, p.weight_max);
            total += w;
            con.terms.push_back({w, mk_lit(v, neg)});
        }
        con.rel = rng.chance(0.5) ? PbRel::LessEq : PbRel::GreaterEq;
        con.bound = rng.uniform(0, total);
        doc.constraints.push_back(std::move(con));
    }
    return doc;
}

}  // namespace moco
