#pragma once

#include "moco/engine.hpp"

namespace moco {

// Baseline enumeration: take any model, descend to a minimal one by repeatedly
// demanding "weakly dominates the incumbent and differs somewhere", block the
// dominated region permanently, repeat until the formula runs out of models.
class PMinimalEngine final : public MocoEngine {
public:
    ParetoResult solve(const MocoInstance& inst, const EngineConfig& cfg,
                       EngineObserver* obs = nullptr) override;

    std::string name() const override { return "p-minimal"; }
};

}  // namespace moco
