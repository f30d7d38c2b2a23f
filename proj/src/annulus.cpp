#include "frontier_lab/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace flab {

namespace {

enum Zone { kBelow = 0, kIn = 1, kAbove = 2 };

inline Zone zone_of(double d2, double r2, double R2) {
    if (d2 < r2) return kBelow;
    if (d2 > R2) return kAbove;
    return kIn;
}

// Sorted circle-crossing parameters of the segment p..q against |x-c| = rad.
inline void circle_hits(const Vec2d& p, const Vec2d& q, const Vec2d& c, double rad,
                        std::vector<double>& out) {
    Vec2d d = q - p;
    Vec2d f = p - c;
    double a = d.norm2();
    if (a == 0.0) return;
    double b = 2.0 * (f.x * d.x + f.y * d.y);
    double cc = f.norm2() - rad * rad;
    double disc = b * b - 4 * a * cc;
    if (disc <= 0.0) return;
    double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)})
        if (t > 0.0 && t < 1.0) out.push_back(t);
}

}  // namespace

std::vector<CrossingSegment> crossing_segments(std::span<const Vec2d> path,
                                               const AnnulusSpec& annulus) {
    std::vector<CrossingSegment> out;
    if (path.size() < 2) return out;
    const double r2 = annulus.inner * annulus.inner;
    const double R2 = annulus.outer * annulus.outer;

    Zone zone = zone_of((path[0] - annulus.center).norm2(), r2, R2);
    // Which circle the current in-annulus run started from; -1 = none.
    int run_origin = -1;
    size_t run_begin = 0;
    std::vector<double> hits;

    for (size_t i = 0; i + 1 < path.size(); ++i) {
        hits.clear();
        circle_hits(path[i], path[i + 1], annulus.center, annulus.inner, hits);
        circle_hits(path[i], path[i + 1], annulus.center, annulus.outer, hits);
        std::sort(hits.begin(), hits.end());
        hits.push_back(1.0);
        // Zones are constant strictly between circle hits; probe midpoints.
        double prev_t = 0.0;
        for (double t : hits) {
            double probe_t = 0.5 * (prev_t + t);
            prev_t = t;
            Vec2d at = path[i] + probe_t * (path[i + 1] - path[i]);
            Zone nz = zone_of((at - annulus.center).norm2(), r2, R2);
            if (nz == zone) continue;
            if (zone == kBelow && nz == kIn) {
                run_origin = 0;
                run_begin = i + 1;
            } else if (zone == kAbove && nz == kIn) {
                run_origin = 1;
                run_begin = i + 1;
            } else if (nz == kAbove) {
                if (zone == kIn && run_origin == 0) out.push_back({run_begin, i + 1, false});
                run_origin = -1;
            } else if (nz == kBelow) {
                if (zone == kIn && run_origin == 1) out.push_back({run_begin, i + 1, true});
                run_origin = -1;
            }
            zone = nz;
        }
    }
    return out;
}

std::vector<CrossingSegment> crossing_segments(std::span<const Vec2i> path,
                                               const AnnulusSpec& annulus) {
    std::vector<Vec2d> p;
    p.reserve(path.size());
    for (const Vec2i& v : path) p.push_back(to_vec2d(v));
    return crossing_segments(p, annulus);
}

namespace {

// Index of the first vertex after `from` on the far side of |v-c| = rad,
// in the given direction (inward: < rad, outward: > rad).  npos if none.
size_t next_crossing(const std::vector<Vec2i>& verts, size_t from, Vec2d c, double rad,
                     bool inward) {
    const double r2 = rad * rad;
    for (size_t i = from + 1; i < verts.size(); ++i) {
        double d2 = (to_vec2d(verts[i]) - c).norm2();
        bool inside = d2 < r2;
        double p2 = (to_vec2d(verts[i - 1]) - c).norm2();
        bool prev_inside = p2 < r2;
        if (inward && inside && !prev_inside) return i;
        if (!inward && !inside && prev_inside) return i;
    }
    return size_t(-1);
}

// Last index in [begin, end] that crosses `rad` in the given direction.
size_t last_crossing_before(const std::vector<Vec2i>& verts, size_t begin, size_t end, Vec2d c,
                            double rad, bool inward) {
    const double r2 = rad * rad;
    size_t found = begin;
    for (size_t i = begin; i <= end && i < verts.size(); ++i) {
        if (i == 0) continue;
        double d2 = (to_vec2d(verts[i]) - c).norm2();
        double p2 = (to_vec2d(verts[i - 1]) - c).norm2();
        bool inside = d2 < r2, prev_inside = p2 < r2;
        if ((inward && inside && !prev_inside) || (!inward && !inside && prev_inside)) found = i;
    }
    return found;
}

}  // namespace

std::optional<FourArms> extract_four_arms(const Walk& walk, Vec2i center, double mid_radius,
                                          double outer_radius, double core_radius) {
    if (!(mid_radius < outer_radius))
        throw std::invalid_argument("extract_four_arms: need mid < outer radius");
    if (core_radius <= 0.0) core_radius = std::max(1.0, std::pow(mid_radius, 0.8));
    if (core_radius >= mid_radius) core_radius = mid_radius / 2.0;

    const Vec2d c = to_vec2d(center);
    auto verts = walk.vertices();
    constexpr size_t npos = size_t(-1);

    // If the walk starts inside a circle, the "first crossing" below is the
    // first outward/inward transition encountered; start the clock before 0.
    size_t t1 = next_crossing(verts, 0, c, outer_radius, true);
    if (t1 == npos && (to_vec2d(verts[0]) - c).norm2() < outer_radius * outer_radius)
        t1 = 0;  // started inside the outer disk
    if (t1 == npos) return std::nullopt;
    size_t t2 = next_crossing(verts, t1, c, mid_radius, true);
    if (t2 == npos) return std::nullopt;
    size_t s1 = next_crossing(verts, t2, c, core_radius, true);
    if (s1 == npos) return std::nullopt;
    size_t t3 = next_crossing(verts, s1, c, mid_radius, false);
    if (t3 == npos) return std::nullopt;
    size_t t4 = next_crossing(verts, t3, c, outer_radius, false);
    if (t4 == npos) return std::nullopt;
    size_t s2 = next_crossing(verts, t4, c, outer_radius, true);  // re-entry
    if (s2 == npos) return std::nullopt;
    size_t t5 = s2;
    size_t t6 = next_crossing(verts, t5, c, mid_radius, true);
    if (t6 == npos) return std::nullopt;
    size_t s3 = next_crossing(verts, t6, c, core_radius, true);
    if (s3 == npos) return std::nullopt;
    size_t t7 = next_crossing(verts, s3, c, mid_radius, false);
    if (t7 == npos) return std::nullopt;
    size_t t8 = next_crossing(verts, t7, c, outer_radius, false);
    if (t8 == npos) return std::nullopt;

    // Trim each arm to its final annulus traversal, keeping the vertex just
    // before the crossing so the arm spans circle to circle and is a single
    // traversal per crossing_segments.
    auto slice = [&](size_t cross, size_t b) {
        size_t a = cross > 0 ? cross - 1 : 0;
        return std::vector<Vec2i>(verts.begin() + a, verts.begin() + b + 1);
    };
    FourArms fa;
    fa.arms[0] = slice(std::min(last_crossing_before(verts, t1, t2, c, outer_radius, true), t2), t2);
    fa.arms[1] = slice(std::min(last_crossing_before(verts, t3, t4, c, mid_radius, false), t4), t4);
    fa.arms[2] = slice(std::min(last_crossing_before(verts, t5, t6, c, outer_radius, true), t6), t6);
    fa.arms[3] = slice(std::min(last_crossing_before(verts, t7, t8, c, mid_radius, false), t8), t8);
    return fa;
}

namespace {

struct VecHash {
    size_t operator()(const Vec2i& v) const {
        return std::hash<uint64_t>()((uint64_t(uint32_t(v.x)) << 32) | uint32_t(v.y));
    }
};

bool pair_disjoint(const std::vector<Vec2i>& a1, const std::vector<Vec2i>& a2,
                   const std::vector<Vec2i>& b1, const std::vector<Vec2i>& b2) {
    std::unordered_set<Vec2i, VecHash> s;
    s.reserve(2 * (a1.size() + a2.size()));
    for (const auto& v : a1) s.insert(v);
    for (const auto& v : a2) s.insert(v);
    for (const auto& v : b1)
        if (s.count(v)) return false;
    for (const auto& v : b2)
        if (s.count(v)) return false;
    return true;
}

struct EdgeKey {
    int64_t k;
    bool operator==(const EdgeKey& o) const { return k == o.k; }
};
struct EdgeHash {
    size_t operator()(const EdgeKey& e) const { return std::hash<int64_t>()(e.k); }
};

EdgeKey edge_key(Vec2i a, Vec2i b) {
    Vec2i lo = (a.x < b.x || (a.x == b.x && a.y < b.y)) ? a : b;
    bool horiz = a.y == b.y;
    return {((int64_t(uint32_t(lo.x)) << 33) | (int64_t(uint32_t(lo.y)) << 1) | (horiz ? 1 : 0))};
}

bool pair_edge_disjoint(const std::vector<Vec2i>& a1, const std::vector<Vec2i>& a2,
                        const std::vector<Vec2i>& b1, const std::vector<Vec2i>& b2) {
    std::unordered_set<EdgeKey, EdgeHash> s;
    auto put = [&s](const std::vector<Vec2i>& arm) {
        for (size_t i = 0; i + 1 < arm.size(); ++i) s.insert(edge_key(arm[i], arm[i + 1]));
    };
    put(a1);
    put(a2);
    for (const auto* arm : {&b1, &b2})
        for (size_t i = 0; i + 1 < arm->size(); ++i)
            if (s.count(edge_key((*arm)[i], (*arm)[i + 1]))) return false;
    return true;
}

}  // namespace

bool bad_disk_event(const FourArms& fa, bool edge_disjoint) {
    // The 4!/(2*2*2) = 3 distinct splits into two unordered pairs.
    static constexpr int kSplits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& sp : kSplits) {
        bool ok = edge_disjoint
                      ? pair_edge_disjoint(fa.arms[sp[0]], fa.arms[sp[1]], fa.arms[sp[2]],
                                           fa.arms[sp[3]])
                      : pair_disjoint(fa.arms[sp[0]], fa.arms[sp[1]], fa.arms[sp[2]],
                                      fa.arms[sp[3]]);
        if (ok) return true;
    }
    return false;
}

}  // namespace flab
