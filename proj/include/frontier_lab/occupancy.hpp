#pragma once

#include <span>
#include <vector>

#include "frontier_lab/base.hpp"
#include "frontier_lab/walk.hpp"

namespace flab {

// Visited vertices and traversed undirected unit edges of one or more lattice
// paths, with set semantics, over a bounding box with margin >= 2.  Backed by
// bitmaps so membership tests stay O(1) on hot paths.
class PathOccupancy {
  public:
    const Rect& bbox() const { return bbox_; }
    size_t vertex_count() const { return unique_vertices_.size(); }
    size_t edge_count() const { return edge_count_; }
    const std::vector<Vec2i>& vertices() const { return unique_vertices_; }

    bool contains_vertex(Vec2i v) const {
        return bbox_.contains(v) && get(vert_, v.x, v.y);
    }
    // Edge (x,y)-(x+1,y).
    bool has_hedge(int32_t x, int32_t y) const {
        return x >= bbox_.x0 && x < bbox_.x1 && y >= bbox_.y0 && y <= bbox_.y1 && get(hedge_, x, y);
    }
    // Edge (x,y)-(x,y+1).
    bool has_vedge(int32_t x, int32_t y) const {
        return x >= bbox_.x0 && x <= bbox_.x1 && y >= bbox_.y0 && y < bbox_.y1 && get(vedge_, x, y);
    }
    bool has_edge(Vec2i a, Vec2i b) const;

    std::vector<std::pair<Vec2i, Vec2i>> edges() const;

    friend class OccupancyBuilder;

  private:
    size_t idx(int32_t x, int32_t y) const {
        return size_t(y - bbox_.y0) * size_t(bbox_.width()) + size_t(x - bbox_.x0);
    }
    bool get(const std::vector<uint64_t>& bits, int32_t x, int32_t y) const {
        size_t i = idx(x, y);
        return (bits[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::vector<uint64_t>& bits, int32_t x, int32_t y) {
        size_t i = idx(x, y);
        bits[i >> 6] |= uint64_t(1) << (i & 63);
    }

    Rect bbox_;
    std::vector<uint64_t> vert_, hedge_, vedge_;
    std::vector<Vec2i> unique_vertices_;
    size_t edge_count_ = 0;
};

// Accumulates paths, point sets and lattice balls, then freezes them into a
// PathOccupancy whose bbox covers everything with margin >= 2.
class OccupancyBuilder {
  public:
    void add_path(Vec2i start, std::span<const uint8_t> steps);
    void add_walk(const Walk& w) { add_path(w.start, w.steps); }
    void add_occupancy(const PathOccupancy& occ);
    // Open lattice ball {v : |v-center| < radius} plus all internal edges.
    void add_ball(Vec2i center, int64_t radius);
    // Extends the bbox without occupying anything.
    void include_point(Vec2i v);
    void include_rect(const Rect& r);

    PathOccupancy build() const;
    bool empty() const { return paths_.empty() && balls_.empty() && occs_.empty(); }

  private:
    struct PathRef {
        Vec2i start;
        std::vector<uint8_t> steps;
    };
    struct Ball {
        Vec2i center;
        int64_t radius;
    };
    std::vector<PathRef> paths_;
    std::vector<Ball> balls_;
    std::vector<const PathOccupancy*> occs_;
    bool have_hull_ = false;
    Rect hull_{};
    void grow(Vec2i v);
};

PathOccupancy build_occupancy(const Walk& walk);

}  // namespace flab
