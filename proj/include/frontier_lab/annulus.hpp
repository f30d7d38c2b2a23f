#pragma once

#include <optional>
#include <span>
#include <vector>

#include "frontier_lab/base.hpp"
#include "frontier_lab/walk.hpp"

namespace flab {

struct AnnulusSpec {
    Vec2d center{};
    double inner = 0.0;
    double outer = 0.0;
    AnnulusSpec() = default;
    AnnulusSpec(Vec2d c, double r, double R) : center(c), inner(r), outer(R) {
        if (!(0 < r && r < R)) throw std::invalid_argument("AnnulusSpec: need 0 < r < R");
    }
};

struct CrossingSegment {
    size_t begin = 0;  // first polyline index at or after entering the annulus
    size_t end = 0;    // index at which the opposite circle is reached
    bool inward = false;
};

// Maximal sub-intervals during which the path runs from one boundary circle
// of the annulus to the other while staying inside it.
std::vector<CrossingSegment> crossing_segments(std::span<const Vec2d> path,
                                               const AnnulusSpec& annulus);
std::vector<CrossingSegment> crossing_segments(std::span<const Vec2i> path,
                                               const AnnulusSpec& annulus);

// Radii of the four-arm extraction around `center`.  Arms cross the annulus
// (mid, outer); the walk must dip into the core disk between the inward and
// outward crossing of each round trip.
struct ArmRadii {
    double outer = 0.0;
    double mid = 0.0;
    double core = 0.0;  // <= 0 picks the default max(1, mid^{4/5})
};

struct FourArms {
    std::array<std::vector<Vec2i>, 4> arms;
};

// Stopping-time construction of the four annulus-crossing arms
// (in, core, out; re-enter; in, core, out).  Arms are trimmed to their final
// traversal so each is a single annulus crossing.  Returns nothing if the
// walk ends before the sequence completes.
std::optional<FourArms> extract_four_arms(const Walk& walk, Vec2i center, double mid_radius,
                                          double outer_radius, double core_radius = 0.0);

// True iff some split of the four arms into two pairs has vertex-disjoint
// unions.  With edge_disjoint, adjacent-step edge sets are compared instead.
bool bad_disk_event(const FourArms& arms, bool edge_disjoint = false);

}  // namespace flab
