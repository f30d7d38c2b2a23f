#pragma once

#include <vector>

#include "frontier_lab/occupancy.hpp"

namespace flab {

// Rasterized closed delta-neighbourhood on the q-refined lattice.  A cell is
// occupied iff its center lies within delta of the dilated set, so the area
// estimate converges at rate O(1/(delta*q)).
struct SausageRaster {
    int32_t q = 1;
    Rect cell_bbox;  // in refined cells
    std::vector<uint64_t> cells;
    int64_t cell_count = 0;

    bool occupied(int32_t cx, int32_t cy) const {
        if (!cell_bbox.contains({cx, cy})) return false;
        size_t i = size_t(cy - cell_bbox.y0) * cell_bbox.width() + size_t(cx - cell_bbox.x0);
        return (cells[i >> 6] >> (i & 63)) & 1u;
    }
    double area() const { return double(cell_count) / (double(q) * double(q)); }

    // Cell-boundary edges on the q-lattice, so the complement machinery
    // (face_components / disconnects) applies to the dilated set.
    PathOccupancy as_occupancy() const;
};

// delta-neighbourhood of the union of the occupancy's edges (and isolated
// vertices), rasterized at q cells per lattice unit.
SausageRaster sausage_dilate(const PathOccupancy& occ, double delta, int32_t q);

// Same for a bare point set.
SausageRaster sausage_dilate_points(const std::vector<Vec2i>& points, double delta, int32_t q);

// Multi-scale thickening of an exit-stopped walk: for every integer band
// r in [r1, r2], the 2^{15r/16}-neighbourhood of the walk segment between its
// first hits of radii 2^{r-1} and 2^r, together with the walk itself.
class ThickenedRegion {
  public:
    struct Band {
        int band_index;
        double radius;
        size_t seg_begin, seg_end;  // vertex index range of the walk segment
    };

    bool contains(Vec2d p) const;
    bool contains(Vec2i v) const { return contains(to_vec2d(v)); }
    const std::vector<Band>& bands() const { return bands_; }

    friend ThickenedRegion thicken(const Walk& walk, int r1, int r2);

  private:
    std::vector<Vec2d> verts_;
    std::vector<Band> bands_;
};

ThickenedRegion thicken(const Walk& walk, int r1, int r2);

}  // namespace flab
