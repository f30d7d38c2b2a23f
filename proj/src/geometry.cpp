#include <algorithm>
#include <cmath>

#include "frontier_lab/faces.hpp"

namespace flab {

bool PathOccupancy::has_edge(Vec2i a, Vec2i b) const {
    Vec2i d = b - a;
    if (d.x == 1 && d.y == 0) return has_hedge(a.x, a.y);
    if (d.x == -1 && d.y == 0) return has_hedge(b.x, b.y);
    if (d.x == 0 && d.y == 1) return has_vedge(a.x, a.y);
    if (d.x == 0 && d.y == -1) return has_vedge(b.x, b.y);
    return false;
}

std::vector<std::pair<Vec2i, Vec2i>> PathOccupancy::edges() const {
    std::vector<std::pair<Vec2i, Vec2i>> out;
    out.reserve(edge_count_);
    for (int32_t y = bbox_.y0; y <= bbox_.y1; ++y)
        for (int32_t x = bbox_.x0; x <= bbox_.x1; ++x) {
            if (x < bbox_.x1 && get(hedge_, x, y)) out.push_back({{x, y}, {x + 1, y}});
            if (y < bbox_.y1 && get(vedge_, x, y)) out.push_back({{x, y}, {x, y + 1}});
        }
    return out;
}

void OccupancyBuilder::grow(Vec2i v) {
    if (!have_hull_) {
        hull_ = {v.x, v.y, v.x, v.y};
        have_hull_ = true;
        return;
    }
    hull_.x0 = std::min(hull_.x0, v.x);
    hull_.y0 = std::min(hull_.y0, v.y);
    hull_.x1 = std::max(hull_.x1, v.x);
    hull_.y1 = std::max(hull_.y1, v.y);
}

void OccupancyBuilder::add_path(Vec2i start, std::span<const uint8_t> steps) {
    PathRef p;
    p.start = start;
    p.steps.assign(steps.begin(), steps.end());
    grow(start);
    Vec2i v = start;
    for (uint8_t d : p.steps) {
        v = v + dir_step(d);
        grow(v);
    }
    paths_.push_back(std::move(p));
}

void OccupancyBuilder::add_occupancy(const PathOccupancy& occ) {
    occs_.push_back(&occ);
    for (const Vec2i& v : occ.vertices()) grow(v);
}

void OccupancyBuilder::add_ball(Vec2i center, int64_t radius) {
    balls_.push_back({center, radius});
    int32_t r = int32_t(radius);
    grow({center.x - r, center.y - r});
    grow({center.x + r, center.y + r});
}

void OccupancyBuilder::include_point(Vec2i v) { grow(v); }

void OccupancyBuilder::include_rect(const Rect& r) {
    grow({r.x0, r.y0});
    grow({r.x1, r.y1});
}

PathOccupancy OccupancyBuilder::build() const {
    if (!have_hull_) throw std::logic_error("OccupancyBuilder: nothing added");
    PathOccupancy occ;
    occ.bbox_ = {hull_.x0 - 2, hull_.y0 - 2, hull_.x1 + 2, hull_.y1 + 2};
    size_t cells = size_t(occ.bbox_.width()) * size_t(occ.bbox_.height());
    size_t words = (cells + 63) / 64;
    occ.vert_.assign(words, 0);
    occ.hedge_.assign(words, 0);
    occ.vedge_.assign(words, 0);

    auto add_vertex = [&occ](Vec2i v) {
        size_t i = occ.idx(v.x, v.y);
        uint64_t m = uint64_t(1) << (i & 63);
        if (!(occ.vert_[i >> 6] & m)) {
            occ.vert_[i >> 6] |= m;
            occ.unique_vertices_.push_back(v);
        }
    };
    auto add_edge_to = [&occ, &add_vertex](Vec2i a, Vec2i b) {
        add_vertex(b);
        Vec2i lo = (a.x < b.x || a.y < b.y) ? a : b;
        auto& plane = (a.y == b.y) ? occ.hedge_ : occ.vedge_;
        size_t i = occ.idx(lo.x, lo.y);
        uint64_t m = uint64_t(1) << (i & 63);
        if (!(plane[i >> 6] & m)) {
            plane[i >> 6] |= m;
            occ.edge_count_++;
        }
    };

    for (const auto& p : paths_) {
        Vec2i v = p.start;
        add_vertex(v);
        for (uint8_t d : p.steps) {
            Vec2i w = v + dir_step(d);
            add_edge_to(v, w);
            v = w;
        }
    }
    for (const auto* src : occs_) {
        for (const Vec2i& v : src->vertices()) add_vertex(v);
        for (int32_t y = src->bbox().y0; y <= src->bbox().y1; ++y)
            for (int32_t x = src->bbox().x0; x <= src->bbox().x1; ++x) {
                if (src->has_hedge(x, y)) {
                    add_vertex({x, y});
                    add_edge_to({x, y}, {x + 1, y});
                }
                if (src->has_vedge(x, y)) {
                    add_vertex({x, y});
                    add_edge_to({x, y}, {x, y + 1});
                }
            }
    }
    for (const auto& b : balls_) {
        int64_t r2 = b.radius * b.radius;
        int32_t r = int32_t(b.radius);
        for (int32_t dy = -r; dy <= r; ++dy)
            for (int32_t dx = -r; dx <= r; ++dx) {
                if (int64_t(dx) * dx + int64_t(dy) * dy >= r2) continue;
                Vec2i v{b.center.x + dx, b.center.y + dy};
                add_vertex(v);
                // Internal edges: to +x / +y neighbours also inside the ball.
                if (int64_t(dx + 1) * (dx + 1) + int64_t(dy) * dy < r2) add_edge_to(v, {v.x + 1, v.y});
                if (int64_t(dx) * dx + int64_t(dy + 1) * (dy + 1) < r2) add_edge_to(v, {v.x, v.y + 1});
            }
    }
    return occ;
}

PathOccupancy build_occupancy(const Walk& walk) {
    OccupancyBuilder b;
    b.add_walk(walk);
    return b.build();
}

namespace detail {

void FaceScratch::begin(size_t n) {
    if (stamp.size() < n) stamp.assign(n, 0);
    if (++epoch == 0) {
        std::fill(stamp.begin(), stamp.end(), 0);
        epoch = 1;
    }
    queue.clear();
}

FaceScratch& tls_face_scratch() {
    thread_local FaceScratch s;
    return s;
}

// Flood fill across faces through untraversed edges, starting from whatever
// is already in scratch.queue.  Visits are recorded via scratch stamps.
// Returns true as soon as a border face is reached when stop_at_border.
static bool flood(const PathOccupancy& occ, FaceScratch& s, bool stop_at_border) {
    const Rect& bb = occ.bbox();
    const int32_t fw = bb.width() - 1;
    const int32_t fh = bb.height() - 1;
    size_t head = 0;
    while (head < s.queue.size()) {
        int32_t f = s.queue[head++];
        int32_t fy = f / fw, fx = f % fw;
        if (stop_at_border && (fx == 0 || fy == 0 || fx == fw - 1 || fy == fh - 1)) return true;
        int32_t ax = fx + bb.x0, ay = fy + bb.y0;
        // left neighbour, shared vertical edge at (ax, ay)
        if (fx > 0 && !occ.has_vedge(ax, ay) && s.mark(size_t(f) - 1)) s.queue.push_back(f - 1);
        // right neighbour, shared vertical edge at (ax+1, ay)
        if (fx + 1 < fw && !occ.has_vedge(ax + 1, ay) && s.mark(size_t(f) + 1)) s.queue.push_back(f + 1);
        // down neighbour, shared horizontal edge at (ax, ay)
        if (fy > 0 && !occ.has_hedge(ax, ay) && s.mark(size_t(f) - fw)) s.queue.push_back(f - fw);
        // up neighbour, shared horizontal edge at (ax, ay+1)
        if (fy + 1 < fh && !occ.has_hedge(ax, ay + 1) && s.mark(size_t(f) + fw)) s.queue.push_back(f + fw);
    }
    return false;
}

int32_t mark_unbounded_faces(const PathOccupancy& occ, FaceScratch& s) {
    const Rect& bb = occ.bbox();
    const int32_t fw = bb.width() - 1;
    const int32_t fh = bb.height() - 1;
    s.begin(size_t(fw) * fh);
    s.mark(0);
    s.queue.push_back(0);
    flood(occ, s, false);
    // Margin >= 2 keeps the border ring edge-free, so one seed covers it.
    (void)fh;
    return fw;
}

}  // namespace detail

FaceLabeling face_components(const PathOccupancy& occ) {
    const Rect& bb = occ.bbox();
    FaceLabeling out;
    out.vertex_bbox = bb;
    out.faces_w = bb.width() - 1;
    out.faces_h = bb.height() - 1;
    out.labels.assign(size_t(out.faces_w) * out.faces_h, -1);

    std::vector<int32_t> queue;
    int32_t next_label = 0;
    const int32_t fw = out.faces_w, fh = out.faces_h;
    for (int32_t f0 = 0; f0 < fw * fh; ++f0) {
        if (out.labels[f0] != -1) continue;
        int32_t lbl = next_label++;
        queue.clear();
        queue.push_back(f0);
        out.labels[f0] = lbl;
        size_t head = 0;
        while (head < queue.size()) {
            int32_t f = queue[head++];
            int32_t fy = f / fw, fx = f % fw;
            int32_t ax = fx + bb.x0, ay = fy + bb.y0;
            auto try_push = [&](int32_t g, bool open) {
                if (open && out.labels[g] == -1) {
                    out.labels[g] = lbl;
                    queue.push_back(g);
                }
            };
            if (fx > 0) try_push(f - 1, !occ.has_vedge(ax, ay));
            if (fx + 1 < fw) try_push(f + 1, !occ.has_vedge(ax + 1, ay));
            if (fy > 0) try_push(f - fw, !occ.has_hedge(ax, ay));
            if (fy + 1 < fh) try_push(f + fw, !occ.has_hedge(ax, ay + 1));
        }
    }
    out.component_count = next_label;
    out.unbounded_id = out.labels[0];
    return out;
}

Region Region::disk(Vec2d c, double radius) {
    Region r;
    r.kind = Kind::Disk;
    r.center = c;
    r.outer = radius;
    return r;
}

Region Region::annulus(Vec2d c, double inner, double outer) {
    if (!(0 < inner && inner < outer)) throw std::invalid_argument("annulus: need 0 < r < R");
    Region r;
    r.kind = Kind::Annulus;
    r.center = c;
    r.inner = inner;
    r.outer = outer;
    return r;
}

Region Region::box(double x0, double y0, double x1, double y1) {
    Region r;
    r.kind = Kind::Box;
    r.bx0 = x0;
    r.by0 = y0;
    r.bx1 = x1;
    r.by1 = y1;
    return r;
}

static double face_min_dist2(Vec2d c, int32_t fx, int32_t fy) {
    double dx = std::max({double(fx) - c.x, 0.0, c.x - double(fx + 1)});
    double dy = std::max({double(fy) - c.y, 0.0, c.y - double(fy + 1)});
    return dx * dx + dy * dy;
}

static double face_max_dist2(Vec2d c, int32_t fx, int32_t fy) {
    double dx = std::max(std::abs(double(fx) - c.x), std::abs(double(fx + 1) - c.x));
    double dy = std::max(std::abs(double(fy) - c.y), std::abs(double(fy + 1) - c.y));
    return dx * dx + dy * dy;
}

bool Region::meets_face(int32_t fx, int32_t fy) const {
    switch (kind) {
        case Kind::Disk:
            return face_min_dist2(center, fx, fy) <= outer * outer;
        case Kind::Annulus:
            return face_min_dist2(center, fx, fy) <= outer * outer &&
                   face_max_dist2(center, fx, fy) >= inner * inner;
        case Kind::Box:
        default:
            return double(fx + 1) >= bx0 && double(fx) <= bx1 && double(fy + 1) >= by0 &&
                   double(fy) <= by1;
    }
}

std::array<double, 4> Region::extent() const {
    if (kind == Kind::Box) return {bx0, by0, bx1, by1};
    return {center.x - outer, center.y - outer, center.x + outer, center.y + outer};
}

Rect Region::face_candidates() const {
    auto [x0, y0, x1, y1] = extent();
    return {int32_t(std::floor(x0)) - 1, int32_t(std::floor(y0)) - 1,
            int32_t(std::ceil(x1)) + 1, int32_t(std::ceil(y1)) + 1};
}

bool disconnects(const PathOccupancy& occ, const Region& inner) {
    const Rect& bb = occ.bbox();
    const int32_t fw = bb.width() - 1;
    const int32_t fh = bb.height() - 1;
    auto [ex0, ey0, ex1, ey1] = inner.extent();
    if (ex0 <= bb.x0 || ey0 <= bb.y0 || ex1 >= bb.x1 || ey1 >= bb.y1)
        throw std::invalid_argument("disconnects: region not inside occupancy bbox interior");
    Rect cand = inner.face_candidates();

    auto& s = detail::tls_face_scratch();
    s.begin(size_t(fw) * fh);
    for (int32_t fy = std::max(cand.y0, bb.y0); fy <= std::min(cand.y1, int32_t(bb.y1 - 1)); ++fy)
        for (int32_t fx = std::max(cand.x0, bb.x0); fx <= std::min(cand.x1, int32_t(bb.x1 - 1)); ++fx) {
            if (!inner.meets_face(fx, fy)) continue;
            size_t f = size_t(fy - bb.y0) * fw + size_t(fx - bb.x0);
            if (s.mark(f)) s.queue.push_back(int32_t(f));
        }
    if (s.queue.empty()) return true;  // nothing to connect
    return !detail::flood(occ, s, /*stop_at_border=*/true);
}

}  // namespace flab
