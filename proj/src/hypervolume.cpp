#include "moco/hypervolume.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "moco/rng.hpp"

namespace moco {

std::vector<ObjectiveVector> nondominated_filter(std::vector<ObjectiveVector> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<ObjectiveVector> keep;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : points)
            if (strictly_dominates(q, p)) { dominated = true; break; }
        if (!dominated) keep.push_back(p);
    }
    return keep;
}

ReferenceFront build_reference_front(const std::vector<std::vector<ObjectiveVector>>& fronts) {
    std::vector<ObjectiveVector> all;
    for (const auto& f : fronts) all.insert(all.end(), f.begin(), f.end());
    if (all.empty()) throw std::invalid_argument("build_reference_front: no points");
    const size_t m = all.front().size();
    for (const auto& p : all)
        if (p.size() != m)
            throw std::invalid_argument("build_reference_front: dimension mismatch");

    ReferenceFront ref;
    ref.points = nondominated_filter(std::move(all));
    ref.ideal.assign(m, std::numeric_limits<int64_t>::max());
    ref.ref_point.assign(m, std::numeric_limits<int64_t>::min());
    for (const auto& p : ref.points)
        for (size_t i = 0; i < m; ++i) {
            ref.ideal[i] = std::min(ref.ideal[i], p[i]);
            ref.ref_point[i] = std::max(ref.ref_point[i], p[i]);
        }
    for (size_t i = 0; i < m; ++i) ref.ref_point[i] += 1;
    return ref;
}

namespace {

// keeps only points strictly below ref everywhere, then nondominated-filters
std::vector<ObjectiveVector> clip_below(std::vector<ObjectiveVector> points,
                                        const ObjectiveVector& ref) {
    std::vector<ObjectiveVector> in;
    for (auto& p : points) {
        bool below = p.size() == ref.size();
        for (size_t i = 0; below && i < ref.size(); ++i)
            if (p[i] >= ref[i]) below = false;
        if (below) in.push_back(std::move(p));
    }
    return nondominated_filter(std::move(in));
}

// m == 2 sweep: sort by first coordinate ascending; after the filter the
// second coordinate is strictly decreasing, so each point owns the strip
// between its own height and the previous one.
double hv2(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
    double vol = 0.0;
    int64_t prev_y = ref[1];
    for (const auto& p : pts) { // already sorted lexicographically
        if (p[1] >= prev_y) continue;
        vol += static_cast<double>(ref[0] - p[0]) * static_cast<double>(prev_y - p[1]);
        prev_y = p[1];
    }
    return vol;
}

double hv_rec(std::vector<ObjectiveVector> pts, ObjectiveVector ref);

// m >= 3: slice along the last dimension.  Points are processed in order of
// that coordinate; each slab's thickness multiplies the (m-1)-dimensional
// volume of everything active below the slab.
double hv_slice(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
    const size_t m = ref.size();
    std::vector<size_t> order(pts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return pts[a][m - 1] < pts[b][m - 1];
    });

    double vol = 0.0;
    std::vector<ObjectiveVector> active;
    ObjectiveVector sub_ref(ref.begin(), ref.end() - 1);
    size_t i = 0;
    while (i < order.size()) {
        int64_t z = pts[order[i]][m - 1];
        while (i < order.size() && pts[order[i]][m - 1] == z) {
            const auto& p = pts[order[i]];
            active.emplace_back(p.begin(), p.end() - 1);
            ++i;
        }
        int64_t z_next = (i < order.size()) ? pts[order[i]][m - 1] : ref[m - 1];
        double slab = static_cast<double>(z_next - z);
        if (slab > 0.0) vol += slab * hv_rec(active, sub_ref);
    }
    return vol;
}

double hv_rec(std::vector<ObjectiveVector> pts, ObjectiveVector ref) {
    pts = clip_below(std::move(pts), ref);
    if (pts.empty()) return 0.0;
    const size_t m = ref.size();
    if (m == 1) {
        int64_t best = pts.front()[0]; // sorted: first is minimum
        return static_cast<double>(ref[0] - best);
    }
    if (m == 2) return hv2(pts, ref);
    return hv_slice(pts, ref);
}

}  // namespace

double hv_monte_carlo(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref,
                      uint64_t samples, uint64_t seed) {
    auto pts = clip_below(points, ref);
    if (pts.empty() || samples == 0) return 0.0;
    const size_t m = ref.size();
    // sampling box: [per-dimension front minimum, ref)
    ObjectiveVector lo(m, std::numeric_limits<int64_t>::max());
    for (const auto& p : pts)
        for (size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], p[i]);
    double box = 1.0;
    for (size_t i = 0; i < m; ++i) box *= static_cast<double>(ref[i] - lo[i]);
    if (box <= 0.0) return 0.0;

    Rng rng(seed);
    uint64_t hits = 0;
    std::vector<double> s(m);
    for (uint64_t it = 0; it < samples; ++it) {
        for (size_t i = 0; i < m; ++i)
            s[i] = static_cast<double>(lo[i]) +
                   rng.uniform01() * static_cast<double>(ref[i] - lo[i]);
        for (const auto& p : pts) {
            bool dom = true;
            for (size_t i = 0; i < m; ++i)
                if (static_cast<double>(p[i]) > s[i]) { dom = false; break; }
            if (dom) { ++hits; break; }
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

double hv_raw(std::vector<ObjectiveVector> points, const ObjectiveVector& ref) {
    auto pts = clip_below(std::move(points), ref);
    if (pts.empty()) return 0.0;
    if (ref.size() <= 4) return hv_rec(std::move(pts), ref);
    return hv_monte_carlo(pts, ref, 1'000'000, 0x9e3779b97f4a7c15ULL);
}

HvResult hypervolume(const std::vector<ObjectiveVector>& front, const ReferenceFront& ref) {
    const size_t m = ref.ref_point.size();
    HvResult out;
    out.exact = m <= 4;

    // clip up to the ideal so no point claims volume outside the box
    std::vector<ObjectiveVector> clipped;
    for (const auto& p : front) {
        if (p.size() != m) throw std::invalid_argument("hypervolume: dimension mismatch");
        ObjectiveVector q(m);
        for (size_t i = 0; i < m; ++i) q[i] = std::max(p[i], ref.ideal[i]);
        clipped.push_back(std::move(q));
    }

    out.raw = hv_raw(std::move(clipped), ref.ref_point);

    double box = 1.0;
    for (size_t i = 0; i < m; ++i)
        box *= static_cast<double>(ref.ref_point[i] - ref.ideal[i]);
    if (box <= 0.0) {
        out.normalized = out.raw == 0.0 ? 0.0 : 1.0;
    } else {
        out.normalized = out.raw / box;
    }
    return out;
}

}  // namespace moco
