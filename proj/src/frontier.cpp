#include "frontier_lab/frontier.hpp"

#include <cmath>

namespace flab {

namespace {

// Face on the right-hand side of the directed edge (v, v + dir), by
// lower-left corner.
inline Vec2i right_face(Vec2i v, uint8_t dir) {
    switch (dir) {
        case kPlusX: return {v.x, v.y - 1};
        case kMinusX: return {v.x - 1, v.y};
        case kPlusY: return {v.x, v.y};
        default: return {v.x - 1, v.y - 1};
    }
}

// CCW rotation order +x -> +y -> -x -> -y.
inline uint8_t rot_ccw(uint8_t d) {
    static constexpr uint8_t kNext[4] = {kPlusY, kMinusY, kMinusX, kPlusX};
    return kNext[d];
}

inline bool face_unbounded(const detail::FaceScratch& s, const Rect& bb, int32_t fw, Vec2i f) {
    if (f.x < bb.x0 || f.x >= bb.x1 || f.y < bb.y0 || f.y >= bb.y1) return false;
    return s.marked(size_t(f.y - bb.y0) * fw + size_t(f.x - bb.x0));
}

}  // namespace

std::vector<Vec2i> frontier_vertices(const PathOccupancy& occ) {
    auto& s = detail::tls_face_scratch();
    int32_t fw = detail::mark_unbounded_faces(occ, s);
    const Rect& bb = occ.bbox();
    std::vector<Vec2i> out;
    out.reserve(occ.vertex_count() / 2 + 8);
    for (const Vec2i& v : occ.vertices()) {
        bool exposed = face_unbounded(s, bb, fw, {v.x, v.y}) ||
                       face_unbounded(s, bb, fw, {v.x - 1, v.y}) ||
                       face_unbounded(s, bb, fw, {v.x, v.y - 1}) ||
                       face_unbounded(s, bb, fw, {v.x - 1, v.y - 1});
        if (exposed) out.push_back(v);
    }
    return out;
}

bool is_frontier_point(const PathOccupancy& occ, Vec2i v) {
    if (!occ.contains_vertex(v)) return false;
    return !disconnects(occ, Region::vertex(v));
}

uint32_t frontier_probe_mask(const PathOccupancy& occ, std::span<const Vec2i> probes) {
    if (probes.size() > 32) throw std::invalid_argument("frontier_probe_mask: at most 32 probes");
    auto& s = detail::tls_face_scratch();
    int32_t fw = detail::mark_unbounded_faces(occ, s);
    const Rect& bb = occ.bbox();
    uint32_t mask = 0;
    for (size_t i = 0; i < probes.size(); ++i) {
        Vec2i v = probes[i];
        if (!occ.contains_vertex(v)) continue;
        bool exposed = face_unbounded(s, bb, fw, {v.x, v.y}) ||
                       face_unbounded(s, bb, fw, {v.x - 1, v.y}) ||
                       face_unbounded(s, bb, fw, {v.x, v.y - 1}) ||
                       face_unbounded(s, bb, fw, {v.x - 1, v.y - 1});
        if (exposed) mask |= (1u << i);
    }
    return mask;
}

double FrontierCurve::signed_area() const {
    double a = 0.0;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        const Vec2i& p = vertices[i];
        const Vec2i& q = vertices[i + 1];
        a += double(p.x) * q.y - double(q.x) * p.y;
    }
    return 0.5 * a;
}

std::vector<Vec2d> FrontierCurve::as_polyline() const {
    std::vector<Vec2d> out;
    out.reserve(vertices.size());
    for (const Vec2i& v : vertices) out.push_back(to_vec2d(v));
    return out;
}

FrontierCurve trace_frontier_curve(const Walk& walk, double c1) {
    PathOccupancy occ = build_occupancy(walk);
    auto& s = detail::tls_face_scratch();
    int32_t fw = detail::mark_unbounded_faces(occ, s);
    const Rect& bb = occ.bbox();

    Vec2i v0 = walk.last_vertex();
    uint8_t d0 = 255;
    for (uint8_t d = 0; d < 4; ++d) {
        if (!occ.has_edge(v0, v0 + dir_step(d))) continue;
        if (face_unbounded(s, bb, fw, right_face(v0, d))) {
            d0 = d;
            break;
        }
    }
    if (d0 == 255)
        throw std::logic_error("trace_frontier_curve: exit vertex not on the outer boundary");

    FrontierCurve curve;
    curve.per_traversal_duration = c1 * std::pow(2.0, -4.0 * walk.scale_index / 3.0);
    curve.vertices.push_back(v0);

    Vec2i v = v0;
    uint8_t d = d0;
    size_t guard = 8 * (occ.edge_count() + 4);
    do {
        v = v + dir_step(d);
        curve.vertices.push_back(v);
        uint8_t cand = rot_ccw(dir_reverse(d));
        uint8_t next = 255;
        for (int i = 0; i < 4; ++i) {
            if (occ.has_edge(v, v + dir_step(cand))) {
                next = cand;
                break;
            }
            cand = rot_ccw(cand);
        }
        if (next == 255) throw std::logic_error("trace_frontier_curve: dangling half-edge");
        d = next;
        if (curve.vertices.size() > guard)
            throw std::logic_error("trace_frontier_curve: tracing failed to close");
    } while (!(v == v0 && d == d0));

    curve.total_duration = curve.per_traversal_duration * double(curve.traversal_count());
    curve.counterclockwise = true;
    return curve;
}

bool frontier_disk_event(const Walk& walk, Vec2i center, double disk_radius,
                         double envelope_radius) {
    const double exit_r = double(walk.exit_radius());
    if (!(disk_radius < envelope_radius && envelope_radius < exit_r))
        throw std::invalid_argument("frontier_disk_event: need disk < envelope < exit radius");
    if ((to_vec2d(walk.start) - to_vec2d(center)).norm() <= disk_radius)
        throw std::invalid_argument("frontier_disk_event: start lies in the disk");

    const double r2 = disk_radius * disk_radius;
    auto in_disk = [&](Vec2i v) { return double((v - center).norm2()) <= r2; };

    // First and last indices of vertices in the closed disk.
    auto verts = walk.vertices();
    size_t first = verts.size(), last = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
        if (in_disk(verts[i])) {
            if (first == verts.size()) first = i;
            last = i;
        }
    }
    if (first == verts.size()) return false;  // clause (i): never hits the disk

    // Clause (iii): the excursion stays inside the envelope ball.
    const double env2 = envelope_radius * envelope_radius;
    for (size_t i = first; i <= last; ++i)
        if (double((verts[i] - center).norm2()) > env2) return false;

    // Clause (ii): the outer pieces do not disconnect the disk from infinity.
    OccupancyBuilder b;
    b.add_path(walk.start, std::span<const uint8_t>(walk.steps.data(), first));
    if (last < walk.steps.size())
        b.add_path(verts[last],
                   std::span<const uint8_t>(walk.steps.data() + last, walk.steps.size() - last));
    int32_t rr = int32_t(std::ceil(disk_radius)) + 1;
    b.include_rect({center.x - rr, center.y - rr, center.x + rr, center.y + rr});
    PathOccupancy outer = b.build();
    return !disconnects(outer, Region::disk(to_vec2d(center), disk_radius));
}

double separation_quality(const PathOccupancy& occ1, const PathOccupancy& occ2, Vec2i endpoint1,
                          Vec2i endpoint2, double scale) {
    if (scale <= 0) throw std::invalid_argument("separation_quality: scale must be positive");
    const Vec2i origin{0, 0};

    auto frontier_with_balls = [&](int64_t rho) {
        OccupancyBuilder b;
        b.add_occupancy(occ1);
        b.add_occupancy(occ2);
        if (rho > 0) {
            b.add_ball(endpoint1, rho);
            b.add_ball(endpoint2, rho);
        }
        b.include_point(origin);
        PathOccupancy u = b.build();
        return is_frontier_point(u, origin);
    };

    if (!frontier_with_balls(0)) return 0.0;

    // Disks covering the origin certainly destroy frontier membership.
    int64_t hi = int64_t(std::min(to_vec2d(endpoint1).norm(), to_vec2d(endpoint2).norm())) + 2;
    if (!frontier_with_balls(1)) return 0.0;
    int64_t lo = 1;
    while (lo + 1 < hi) {  // predicate is monotone in the radius
        int64_t mid = lo + (hi - lo) / 2;
        if (frontier_with_balls(mid))
            lo = mid;
        else
            hi = mid;
    }
    return double(lo) / scale;
}

}  // namespace flab
