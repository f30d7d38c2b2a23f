#include "frontier_lab/sausage.hpp"

#include <algorithm>
#include <cmath>

namespace flab {

namespace {

struct RasterBuilder {
    int32_t q;
    Rect bb{};  // refined cells
    bool have = false;
    std::vector<uint64_t> bits;
    int64_t count = 0;

    void init(double x0, double y0, double x1, double y1, double delta) {
        bb.x0 = int32_t(std::floor((x0 - delta) * q)) - 1;
        bb.y0 = int32_t(std::floor((y0 - delta) * q)) - 1;
        bb.x1 = int32_t(std::ceil((x1 + delta) * q)) + 1;
        bb.y1 = int32_t(std::ceil((y1 + delta) * q)) + 1;
        bits.assign((size_t(bb.width()) * bb.height() + 63) / 64, 0);
        have = true;
    }
    void set(int32_t cx, int32_t cy) {
        size_t i = size_t(cy - bb.y0) * bb.width() + size_t(cx - bb.x0);
        uint64_t m = uint64_t(1) << (i & 63);
        if (!(bits[i >> 6] & m)) {
            bits[i >> 6] |= m;
            ++count;
        }
    }

    // Marks every cell whose center is within delta of segment a-b (unit
    // axis-aligned segment or a point when a == b).
    void mark_segment(Vec2d a, Vec2d b, double delta) {
        double lox = std::min(a.x, b.x) - delta, hix = std::max(a.x, b.x) + delta;
        double loy = std::min(a.y, b.y) - delta, hiy = std::max(a.y, b.y) + delta;
        int32_t cx0 = std::max(bb.x0, int32_t(std::floor(lox * q - 0.5)));
        int32_t cx1 = std::min(bb.x1, int32_t(std::ceil(hix * q - 0.5)));
        int32_t cy0 = std::max(bb.y0, int32_t(std::floor(loy * q - 0.5)));
        int32_t cy1 = std::min(bb.y1, int32_t(std::ceil(hiy * q - 0.5)));
        const double d2 = delta * delta;
        Vec2d ab = b - a;
        double len2 = ab.norm2();
        for (int32_t cy = cy0; cy <= cy1; ++cy) {
            double py = (double(cy) + 0.5) / q;
            for (int32_t cx = cx0; cx <= cx1; ++cx) {
                double px = (double(cx) + 0.5) / q;
                double t = 0.0;
                if (len2 > 0.0)
                    t = std::clamp(((px - a.x) * ab.x + (py - a.y) * ab.y) / len2, 0.0, 1.0);
                double dx = px - (a.x + t * ab.x), dy = py - (a.y + t * ab.y);
                if (dx * dx + dy * dy <= d2) set(cx, cy);
            }
        }
    }
};

}  // namespace

PathOccupancy SausageRaster::as_occupancy() const {
    OccupancyBuilder b;
    b.include_rect(cell_bbox);
    PathOccupancy dummy;  // builder needs at least the rect; fill edges below
    // Build via explicit edge paths: each occupied cell contributes its 4
    // boundary edges (set semantics dedups shared edges).
    for (int32_t cy = cell_bbox.y0; cy <= cell_bbox.y1; ++cy)
        for (int32_t cx = cell_bbox.x0; cx <= cell_bbox.x1; ++cx) {
            if (!occupied(cx, cy)) continue;
            static const uint8_t loop[4] = {kPlusX, kPlusY, kMinusX, kMinusY};
            b.add_path({cx, cy}, std::span<const uint8_t>(loop, 4));
        }
    (void)dummy;
    return b.build();
}

SausageRaster sausage_dilate(const PathOccupancy& occ, double delta, int32_t q) {
    if (q < 2) throw std::invalid_argument("sausage_dilate: q must be >= 2");
    if (delta < 1.0 / q) throw std::invalid_argument("sausage_dilate: delta below raster resolution");

    RasterBuilder rb{q, {}, false, {}, 0};
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Vec2i& v : occ.vertices()) {
        x0 = std::min(x0, double(v.x));
        y0 = std::min(y0, double(v.y));
        x1 = std::max(x1, double(v.x));
        y1 = std::max(y1, double(v.y));
    }
    if (occ.vertex_count() == 0) throw std::invalid_argument("sausage_dilate: empty occupancy");
    rb.init(x0, y0, x1, y1, delta);

    bool any_edge = false;
    for (const auto& [a, b] : occ.edges()) {
        any_edge = true;
        rb.mark_segment(to_vec2d(a), to_vec2d(b), delta);
    }
    if (!any_edge)
        for (const Vec2i& v : occ.vertices()) rb.mark_segment(to_vec2d(v), to_vec2d(v), delta);

    SausageRaster out;
    out.q = q;
    out.cell_bbox = rb.bb;
    out.cells = std::move(rb.bits);
    out.cell_count = rb.count;
    return out;
}

SausageRaster sausage_dilate_points(const std::vector<Vec2i>& points, double delta, int32_t q) {
    if (q < 2) throw std::invalid_argument("sausage_dilate: q must be >= 2");
    if (delta < 1.0 / q) throw std::invalid_argument("sausage_dilate: delta below raster resolution");
    if (points.empty()) throw std::invalid_argument("sausage_dilate: empty point set");
    RasterBuilder rb{q, {}, false, {}, 0};
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Vec2i& v : points) {
        x0 = std::min(x0, double(v.x));
        y0 = std::min(y0, double(v.y));
        x1 = std::max(x1, double(v.x));
        y1 = std::max(y1, double(v.y));
    }
    rb.init(x0, y0, x1, y1, delta);
    for (const Vec2i& v : points) rb.mark_segment(to_vec2d(v), to_vec2d(v), delta);
    SausageRaster out;
    out.q = q;
    out.cell_bbox = rb.bb;
    out.cells = std::move(rb.bits);
    out.cell_count = rb.count;
    return out;
}

ThickenedRegion thicken(const Walk& walk, int r1, int r2) {
    if (r1 > r2) throw std::invalid_argument("thicken: need r1 <= r2");
    ThickenedRegion region;
    auto verts = walk.vertices();
    region.verts_.reserve(verts.size());
    for (const Vec2i& v : verts) region.verts_.push_back(to_vec2d(v));

    // First hitting index of each dyadic radius 2^r.
    auto first_hit = [&](double radius) -> size_t {
        double r2d = radius * radius;
        for (size_t i = 0; i < region.verts_.size(); ++i)
            if (region.verts_[i].norm2() >= r2d) return i;
        return size_t(-1);
    };

    for (int r = r1; r <= r2; ++r) {
        size_t a = first_hit(std::pow(2.0, r - 1));
        size_t b = first_hit(std::pow(2.0, r));
        if (a == size_t(-1))
            throw std::invalid_argument("thicken: walk never reaches the band's inner radius");
        if (b == size_t(-1)) b = region.verts_.size() - 1;
        region.bands_.push_back(
            {r, std::pow(2.0, 15.0 * r / 16.0), std::min(a, b), std::max(a, b)});
    }
    return region;
}

bool ThickenedRegion::contains(Vec2d p) const {
    // The walk itself is always part of the thickening.
    for (size_t i = 0; i + 1 < verts_.size(); ++i) {
        Vec2d a = verts_[i], b = verts_[i + 1];
        double t = std::clamp((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y), 0.0, 1.0);
        double dx = p.x - (a.x + t * (b.x - a.x)), dy = p.y - (a.y + t * (b.y - a.y));
        if (dx * dx + dy * dy <= 1e-18) return true;
    }
    if (!verts_.empty() && (p - verts_.back()).norm2() <= 1e-18) return true;
    for (const Band& band : bands_) {
        double d2 = band.radius * band.radius;
        for (size_t i = band.seg_begin; i <= band.seg_end && i < verts_.size(); ++i) {
            if (i + 1 <= band.seg_end && i + 1 < verts_.size()) {
                Vec2d a = verts_[i], b = verts_[i + 1];
                Vec2d ab = b - a;
                double len2 = ab.norm2();
                double t = len2 > 0 ? std::clamp(((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2,
                                                 0.0, 1.0)
                                    : 0.0;
                double dx = p.x - (a.x + t * ab.x), dy = p.y - (a.y + t * ab.y);
                if (dx * dx + dy * dy <= d2) return true;
            } else if ((p - verts_[i]).norm2() <= d2) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace flab
