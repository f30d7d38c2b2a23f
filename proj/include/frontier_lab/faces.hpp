#pragma once

#include <vector>

#include "frontier_lab/occupancy.hpp"

namespace flab {

// Connected components of the unit faces of the occupancy's complement.
// Faces are addressed by their lower-left corner; two faces are adjacent iff
// their shared unit edge is not traversed.
struct FaceLabeling {
    Rect vertex_bbox;
    int32_t faces_w = 0, faces_h = 0;
    std::vector<int32_t> labels;
    int32_t unbounded_id = -1;
    int32_t component_count = 0;

    bool in_range(int32_t fx, int32_t fy) const {
        return fx >= vertex_bbox.x0 && fx < vertex_bbox.x1 && fy >= vertex_bbox.y0 &&
               fy < vertex_bbox.y1;
    }
    int32_t label(int32_t fx, int32_t fy) const {
        return labels[size_t(fy - vertex_bbox.y0) * faces_w + size_t(fx - vertex_bbox.x0)];
    }
};

FaceLabeling face_components(const PathOccupancy& occ);

// Geometric membership regions in lattice coordinates.
struct Region {
    enum class Kind { Disk, Annulus, Box };
    Kind kind = Kind::Disk;
    Vec2d center{};
    double inner = 0.0;   // annulus only
    double outer = 0.0;   // disk radius / annulus outer radius
    double bx0 = 0, by0 = 0, bx1 = 0, by1 = 0;  // box only

    static Region disk(Vec2d c, double radius);
    static Region vertex(Vec2i v) { return disk(to_vec2d(v), 0.0); }
    static Region annulus(Vec2d c, double r, double R);
    static Region box(double x0, double y0, double x1, double y1);

    // Does the closed unit face [fx,fx+1]x[fy,fy+1] meet the region?
    bool meets_face(int32_t fx, int32_t fy) const;
    // Conservative rect of face coordinates that can meet the region.
    Rect face_candidates() const;
    // Real-coordinate bounding box (x0, y0, x1, y1).
    std::array<double, 4> extent() const;
};

// True iff the occupancy separates the region from infinity: no face meeting
// the region is connected to the bbox border through untraversed edges.
// Throws if the region is not inside the bbox interior.
bool disconnects(const PathOccupancy& occ, const Region& inner);

namespace detail {

// Reusable flood-fill scratch (epoch-stamped so it never needs re-zeroing).
struct FaceScratch {
    std::vector<uint32_t> stamp;
    std::vector<int32_t> queue;
    uint32_t epoch = 0;
    void begin(size_t n);
    bool mark(size_t i) {
        if (stamp[i] == epoch) return false;
        stamp[i] = epoch;
        return true;
    }
    bool marked(size_t i) const { return stamp[i] == epoch; }
};

FaceScratch& tls_face_scratch();

// Marks every face of the unbounded complement component in `scratch`
// (single flood fill from the border ring).  Returns the face-grid width.
int32_t mark_unbounded_faces(const PathOccupancy& occ, FaceScratch& scratch);

}  // namespace detail

}  // namespace flab
