#pragma once

#include <vector>

#include "frontier_lab/faces.hpp"

namespace flab {

// Path vertices incident (as a corner) to at least one face of the unbounded
// complement component.
std::vector<Vec2i> frontier_vertices(const PathOccupancy& occ);

bool is_frontier_point(const PathOccupancy& occ, Vec2i v);

// Bitmask of probe vertices on the frontier (bit i <-> probes[i]); one flood
// fill shared across all probes.  At most 32 probes.
uint32_t frontier_probe_mask(const PathOccupancy& occ, std::span<const Vec2i> probes);

// Closed counterclockwise outer-boundary loop of the walk's edge union,
// traced with a fixed duration per directed edge traversal.
struct FrontierCurve {
    std::vector<Vec2i> vertices;  // closed: first == last
    double per_traversal_duration = 0.0;
    double total_duration = 0.0;
    bool counterclockwise = true;

    size_t traversal_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    // Shoelace sum over the traced loop, positive for counterclockwise.
    double signed_area() const;
    std::vector<Vec2d> as_polyline() const;
};

// Traces from the walk's exit vertex around the outer boundary, keeping the
// unbounded face on the right of every directed edge (this is the orientation
// with positive shoelace area).  Each traversal lasts c1 * R^{-4/3}.
FrontierCurve trace_frontier_curve(const Walk& walk, double c1 = 1.0);

// Frontier-disk event: the walk hits the disk, the first-entry/last-exit
// outer pieces do not disconnect the disk from infinity, and the excursion in
// between stays inside the envelope ball.
bool frontier_disk_event(const Walk& walk, Vec2i center, double disk_radius,
                         double envelope_radius);

// Rescaled radius of the largest open lattice balls that can be attached at
// the two endpoints while the origin stays on the frontier of the union.
// Probes integer radii by bisection; `scale` is the lattice scale e^m.
double separation_quality(const PathOccupancy& occ1, const PathOccupancy& occ2, Vec2i endpoint1,
                          Vec2i endpoint2, double scale);

}  // namespace flab
