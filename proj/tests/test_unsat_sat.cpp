#include <doctest.h>

#include "moco/brute_force.hpp"
#include "moco/unsat_sat.hpp"
#include "support.hpp"

using namespace moco;
using namespace testsupport;

namespace {

struct Recorder : EngineObserver {
    std::vector<ObjectiveVector> fences;
    std::vector<std::vector<ObjectiveVector>> archive_snapshots;
    size_t bumps = 0;

    void on_outer_head(const ObjectiveVector& fence, const Archive&,
                       const std::vector<ObjectiveVector>&) override {
        fences.push_back(fence);
    }
    void on_archive_change(const Archive& ar) override {
        auto v = ar.vectors();
        std::sort(v.begin(), v.end());
        archive_snapshots.push_back(std::move(v));
    }
    void on_fence_bump(const ObjectiveVector&) override { ++bumps; }
};

}  // namespace

TEST_CASE("two complementary unit objectives") {
    UnsatSatEngine eng;
    auto res = eng.solve(complementary_units(), {});
    CHECK(res.status == SolveStatus::Complete);
    REQUIRE(res.img_front.size() == 2);
    CHECK(res.img_front[0] == ObjectiveVector{0, 1});
    CHECK(res.img_front[1] == ObjectiveVector{1, 0});
    CHECK(res.arg_front[0] == Assignment{false, true});
    CHECK(res.arg_front[1] == Assignment{true, false});
}

TEST_CASE("infeasible instances complete with an empty front") {
    UnsatSatEngine eng;
    auto res = eng.solve(infeasible_pair(), {});
    CHECK(res.status == SolveStatus::Complete);
    CHECK(res.img_front.empty());
}

TEST_CASE("all-zero optimum closes the search") {
    // unconstrained: x = 0..0 gives the zero vector, dominating everything
    MocoInstance inst;
    inst.num_vars = 2;
    inst.objectives.push_back(ObjectiveFunction::make({{1, mk_lit(1)}}));
    inst.objectives.push_back(ObjectiveFunction::make({{2, mk_lit(2)}}));
    UnsatSatEngine eng;
    auto res = eng.solve(inst, {});
    CHECK(res.status == SolveStatus::Complete);
    REQUIRE(res.img_front.size() == 1);
    CHECK(res.img_front[0] == ObjectiveVector{0, 0});
}

TEST_CASE("matches the exhaustive oracle on generated instances") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
        MocoInstance inst = gen_pb_instance(seed, 4 + static_cast<int>(seed % 6),
                                            3 + static_cast<int>(seed % 4),
                                            2 + static_cast<int>(seed % 2));
        auto oracle = exact_front(inst);
        for (bool strat : {false, true}) {
            UnsatSatEngine eng(strat);
            auto res = eng.solve(inst, {});
            CHECK(res.status == SolveStatus::Complete);
            CHECK(res.img_front == oracle.img_front);
            for (size_t i = 0; i < res.arg_front.size(); ++i) {
                CHECK(inst.feasible(res.arg_front[i]));
                CHECK(evaluate(inst.objectives, res.arg_front[i]) == res.img_front[i]);
            }
        }
    }
}

TEST_CASE("fences only ever move up") {
    for (uint64_t seed : {7u, 17u, 27u}) {
        MocoInstance inst = gen_pb_instance(seed, 8, 5);
        Recorder rec;
        UnsatSatEngine eng;
        auto res = eng.solve(inst, {}, &rec);
        CHECK(res.status == SolveStatus::Complete);
        REQUIRE(!rec.fences.empty());
        CHECK(rec.fences.front() == ObjectiveVector(inst.objectives.size(), 0));
        for (size_t i = 1; i < rec.fences.size(); ++i) {
            bool some_up = false;
            for (size_t k = 0; k < rec.fences[i].size(); ++k) {
                CHECK(rec.fences[i][k] >= rec.fences[i - 1][k]);
                if (rec.fences[i][k] > rec.fences[i - 1][k]) some_up = true;
            }
            CHECK(some_up);
        }
    }
}

TEST_CASE("strict anytime mode publishes only proven-optimal points") {
    for (uint64_t seed = 200; seed < 215; ++seed) {
        MocoInstance inst = gen_pb_instance(seed, 7, 4);
        auto oracle = exact_front(inst);
        Recorder rec;
        EngineConfig cfg;
        cfg.anytime_strict = true;
        UnsatSatEngine eng;
        auto res = eng.solve(inst, cfg, &rec);
        CHECK(res.img_front == oracle.img_front);
        // every published snapshot is a subset of the true front
        for (const auto& snap : rec.archive_snapshots)
            for (const auto& y : snap)
                CHECK(std::count(oracle.img_front.begin(), oracle.img_front.end(), y) == 1);
        // snapshots grow monotonically
        for (size_t i = 1; i < rec.archive_snapshots.size(); ++i)
            CHECK(rec.archive_snapshots[i].size() >= rec.archive_snapshots[i - 1].size());
    }
}

TEST_CASE("default mode snapshots are always feasible vectors") {
    for (uint64_t seed = 300; seed < 310; ++seed) {
        MocoInstance inst = gen_pb_instance(seed, 7, 4);
        OracleConfig ocfg;
        ocfg.keep_feasible = true;
        auto oracle = exact_front(inst, ocfg);
        Recorder rec;
        UnsatSatEngine eng;
        auto res = eng.solve(inst, {}, &rec);
        CHECK(res.img_front == oracle.img_front);
        for (const auto& snap : rec.archive_snapshots)
            for (const auto& y : snap)
                CHECK(std::count(oracle.feasible_vectors.begin(),
                                 oracle.feasible_vectors.end(), y) == 1);
    }
}

TEST_CASE("fence step variant reaches the same fronts") {
    // gapped weights make +1 stepping and next-attainable stepping differ
    for (uint64_t seed = 400; seed < 410; ++seed) {
        MocoInstance inst = gen_pb_instance(seed, 7, 4);
        for (auto& f : inst.objectives)
            for (auto& t : f.terms) t.weight *= 3; // force gaps
        auto oracle = exact_front(inst);
        EngineConfig plus_one;
        plus_one.fence_step_plus_one = true;
        UnsatSatEngine eng;
        CHECK(eng.solve(inst, {}).img_front == oracle.img_front);
        CHECK(eng.solve(inst, plus_one).img_front == oracle.img_front);
    }
}

TEST_CASE("zero deadline reports a timeout with a sound partial front") {
    MocoInstance inst = gen_pb_instance(42, 10, 6);
    EngineConfig cfg;
    cfg.deadline = std::chrono::steady_clock::now();
    UnsatSatEngine eng;
    auto res = eng.solve(inst, cfg);
    CHECK(res.status == SolveStatus::TimeoutPartial);
    CHECK(res.img_front.empty());
}

TEST_CASE("interrupt predicate also stops the search") {
    MocoInstance inst = gen_pb_instance(43, 10, 6);
    EngineConfig cfg;
    cfg.interrupt = [] { return true; };
    UnsatSatEngine eng;
    auto res = eng.solve(inst, cfg);
    CHECK(res.status == SolveStatus::TimeoutPartial);
}

TEST_CASE("reruns with one seed are identical; other seeds agree on the front") {
    MocoInstance inst = gen_pb_instance(50, 9, 5);
    UnsatSatEngine eng;
    EngineConfig a;
    a.seed = 5;
    auto r1 = eng.solve(inst, a);
    auto r2 = eng.solve(inst, a);
    CHECK(r1.img_front == r2.img_front);
    CHECK(r1.arg_front == r2.arg_front);
    CHECK(r1.stats.sat_calls == r2.stats.sat_calls);
    CHECK(r1.stats.cores == r2.stats.cores);

    EngineConfig b;
    b.seed = 99;
    CHECK(eng.solve(inst, b).img_front == r1.img_front);
}

TEST_CASE("stratification splits weights at big ratio jumps") {
    ObjectiveFunction f = ObjectiveFunction::make(
        {{100, mk_lit(1)}, {100, mk_lit(2)}, {1, mk_lit(3)}, {1, mk_lit(4)}});
    StratParams p; // ratio threshold 8; 100/1 = 100 > 8
    auto parts = UnsatSatEngine::partition_terms(f, p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 2);
    CHECK(parts[1].size() == 2);
    for (const auto& t : parts[0]) CHECK(t.weight == 100);
    for (const auto& t : parts[1]) CHECK(t.weight == 1);
}

TEST_CASE("close weights stay in one partition") {
    ObjectiveFunction f = ObjectiveFunction::make(
        {{4, mk_lit(1)}, {3, mk_lit(2)}, {2, mk_lit(3)}});
    auto parts = UnsatSatEngine::partition_terms(f, {});
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].size() == 3);
}

TEST_CASE("size cap closes partitions") {
    std::vector<PbTerm> raw;
    for (int v = 1; v <= 20; ++v) raw.push_back({1, mk_lit(v)});
    StratParams p;
    p.size_cap = 16;
    auto parts = UnsatSatEngine::partition_terms(ObjectiveFunction::make(raw), p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 16);
    CHECK(parts[1].size() == 4);
}

TEST_CASE("stratified schedule reveals objectives cumulatively") {
    MultiObjective fs;
    fs.push_back(ObjectiveFunction::make(
        {{100, mk_lit(1)}, {1, mk_lit(2)}})); // 2 partitions
    fs.push_back(ObjectiveFunction::make({{5, mk_lit(3)}})); // 1 partition
    auto schedule = UnsatSatEngine::strat_schedule(fs, {});
    REQUIRE(schedule.size() == 2); // max partition count
    // round 0: first partition of f1, all of f2
    CHECK(schedule[0][0].upper_bound() == 100);
    CHECK(schedule[0][1].upper_bound() == 5);
    // final round: everything
    CHECK(schedule[1][0].upper_bound() == 101);
    CHECK(schedule[1][1].upper_bound() == 5);
}

TEST_CASE("stratified runs count their rounds") {
    MocoInstance inst;
    inst.num_vars = 4;
    inst.constraints.push_back(PbConstraint::make(
        {{1, mk_lit(1)}, {1, mk_lit(2)}, {1, mk_lit(3)}, {1, mk_lit(4)}},
        PbRel::GreaterEq, 2));
    inst.objectives.push_back(ObjectiveFunction::make(
        {{100, mk_lit(1)}, {100, mk_lit(2)}, {1, mk_lit(3)}, {1, mk_lit(4)}}));
    inst.objectives.push_back(ObjectiveFunction::make(
        {{2, mk_lit(1)}, {3, mk_lit(2)}, {2, mk_lit(3)}, {3, mk_lit(4)}}));
    auto oracle = exact_front(inst);
    UnsatSatEngine eng(true);
    CHECK(eng.name() == "core-guided-strat");
    auto res = eng.solve(inst, {});
    CHECK(res.status == SolveStatus::Complete);
    CHECK(res.img_front == oracle.img_front);
    CHECK(res.stats.rounds == 2);
}
