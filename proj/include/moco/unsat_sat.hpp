#pragma once

#include "moco/engine.hpp"

namespace moco {

// Core-guided search: a fence over the objective space starts at the origin
// and is lifted one unsatisfiable core at a time. While the fenced region is
// satisfiable its models are enumerated and blocked; an empty core proves the
// whole space exhausted.
class UnsatSatEngine final : public MocoEngine {
public:
    explicit UnsatSatEngine(bool stratified = false) : stratified_(stratified) {}

    ParetoResult solve(const MocoInstance& inst, const EngineConfig& cfg,
                       EngineObserver* obs = nullptr) override;

    std::string name() const override {
        return stratified_ ? "core-guided-strat" : "core-guided";
    }

    // Weight partitions of one objective, heaviest first. A partition closes
    // when the ratio of consecutive distinct weights exceeds the threshold or
    // the partition hits the size cap.
    static std::vector<std::vector<PbTerm>> partition_terms(const ObjectiveFunction& f,
                                                            const StratParams& p);

    // Cumulative reveal schedule; entry r holds the objectives visible in
    // round r, the last entry is the full objective set.
    static std::vector<MultiObjective> strat_schedule(const MultiObjective& objectives,
                                                      const StratParams& p);

private:
    bool stratified_;
};

}  // namespace moco
