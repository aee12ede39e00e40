#include "moco/brute_force.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace moco {

OracleResult exact_front(const MocoInstance& inst, const OracleConfig& cfg) {
    if (inst.num_vars > cfg.var_cap)
        throw std::invalid_argument("exact_front: " + std::to_string(inst.num_vars) +
                                    " variables exceeds cap of " + std::to_string(cfg.var_cap));

    OracleResult out;
    // vector -> lexicographically least witness; map keys give deterministic order
    std::map<ObjectiveVector, Assignment> witness;

    const int n = inst.num_vars;
    Assignment x(static_cast<size_t>(n));
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (mask >> i) & 1;
        if (!inst.feasible(x)) continue;
        out.feasible = true;
        ObjectiveVector y = evaluate(inst.objectives, x);
        if (cfg.keep_feasible) out.feasible_vectors.push_back(y);
        auto it = witness.find(y);
        if (it == witness.end()) {
            witness.emplace(std::move(y), x);
        } else if (x < it->second) {
            it->second = x;
        }
    }

    if (cfg.keep_feasible) {
        std::sort(out.feasible_vectors.begin(), out.feasible_vectors.end());
        out.feasible_vectors.erase(
            std::unique(out.feasible_vectors.begin(), out.feasible_vectors.end()),
            out.feasible_vectors.end());
    }

    for (const auto& [y, x_min] : witness) {
        bool dominated = false;
        for (const auto& [z, zx] : witness) {
            (void)zx;
            if (strictly_dominates(z, y)) { dominated = true; break; }
        }
        if (!dominated) {
            out.img_front.push_back(y);
            out.arg_front.push_back(x_min);
        }
    }
    return out;
}

}  // namespace moco
