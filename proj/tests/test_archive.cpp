#include <doctest.h>

#include "moco/archive.hpp"
#include "moco/rng.hpp"
#include "support.hpp"

using namespace moco;

namespace {

Assignment tup(std::initializer_list<int> bits) {
    Assignment a;
    for (int b : bits) a.push_back(b != 0);
    return a;
}

}  // namespace

TEST_CASE("archive keeps only nondominated vectors") {
    Archive ar;
    CHECK(ar.insert(tup({0, 0}), {2, 2}).result == Archive::Insert::Inserted);
    CHECK(ar.insert(tup({0, 1}), {1, 3}).result == Archive::Insert::Inserted);
    // dominated by (2,2)
    CHECK(ar.insert(tup({1, 0}), {3, 3}).result == Archive::Insert::RejectedDominated);
    // equal vector: first witness kept
    auto dup = ar.insert(tup({1, 1}), {2, 2});
    CHECK(dup.result == Archive::Insert::RejectedDuplicate);
    CHECK(!dup.changed());
    CHECK(ar.size() == 2);

    // dominates (2,2) but not (1,3): evicts exactly one entry
    auto win = ar.insert(tup({1, 0}), {2, 1});
    CHECK(win.result == Archive::Insert::Inserted);
    CHECK(win.evicted == 1);
    CHECK(ar.size() == 2);
    for (const auto& e : ar.entries()) CHECK(e.vec != ObjectiveVector{2, 2});
}

TEST_CASE("archive fixpoint is insertion-order independent") {
    Rng rng(99);
    for (int round = 0; round < 50; ++round) {
        std::vector<ObjectiveVector> pts;
        int n = static_cast<int>(rng.uniform(1, 12));
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)});

        auto run = [&](const std::vector<ObjectiveVector>& order) {
            Archive ar;
            for (size_t i = 0; i < order.size(); ++i)
                ar.insert(Assignment(3, false), order[i]);
            auto v = ar.vectors();
            std::sort(v.begin(), v.end());
            return v;
        };
        auto fwd = run(pts);
        std::vector<ObjectiveVector> rev(pts.rbegin(), pts.rend());
        CHECK(fwd == run(rev));
        CHECK(fwd == testsupport::slow_front(pts));
    }
}

TEST_CASE("make_result sorts fronts canonically") {
    Archive ar;
    ar.insert(tup({1, 1, 0}), {2, 0});
    ar.insert(tup({0, 0, 1}), {0, 2});
    SolveStats st;
    auto res = make_result(ar, SolveStatus::Complete, st);
    REQUIRE(res.img_front.size() == 2);
    CHECK(res.img_front[0] == ObjectiveVector{0, 2});
    CHECK(res.img_front[1] == ObjectiveVector{2, 0});
    CHECK(res.arg_front[0] == tup({0, 0, 1}));
    CHECK(res.arg_front[1] == tup({1, 1, 0}));
    CHECK(to_string(res.status) == "complete");
}

TEST_CASE("stats absorb sums counters but not wall time") {
    SolveStats a, b;
    a.sat_calls = 3;
    a.wall_ms = 10.0;
    b.sat_calls = 4;
    b.cores = 2;
    b.wall_ms = 99.0;
    a.absorb(b);
    CHECK(a.sat_calls == 7);
    CHECK(a.cores == 2);
    CHECK(a.wall_ms == 10.0);
}
