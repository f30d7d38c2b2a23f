#pragma once

#include <optional>
#include <vector>

#include "frontier_lab/rng.hpp"
#include "frontier_lab/walk.hpp"

namespace flab {

// Planar Brownian path sampled on a uniform dt-grid.  `stride` > 1 means only
// every stride-th grid point is stored (large-scale couplings).
struct BmPath {
    double dt = 0.0;
    Vec2d origin{};
    std::vector<Vec2d> samples;
    size_t stride = 1;

    double sample_time(size_t k) const { return double(k) * dt * double(stride); }
    double duration() const { return samples.empty() ? 0.0 : sample_time(samples.size() - 1); }
    // Linear interpolation between stored samples.
    Vec2d at(double t) const;
};

struct BmSampleResult {
    std::optional<BmPath> path;
    bool aborted = false;
};

// Independent N(0, dt) increments per coordinate, stopped at the first grid
// time with |W| >= stop_radius.
BmSampleResult sample_bm_grid(Rng& rng, double dt, double stop_radius, uint64_t step_budget = 0);

// Skorokhod-embedded pair: the walk's steps are the unit-level crossings of
// the two Brownian coordinates, consumed in the order of an independent
// uniform coordinate selector.  Step j is aligned to the (interpolated)
// crossing time that produced it, monotonized by a running max.
struct CouplingSample {
    Walk walk;
    BmPath bm;
    std::vector<double> alignment;  // nondecreasing, one entry per walk step
    double max_deviation = 0.0;     // sup |W(t)-S(t)| up to `horizon`, full grid
    double exit_radius = 0.0;
    double horizon = 0.0;  // earlier of the two exit times (or budget cut)
    bool walk_exited = false;
    bool bm_exited = false;
    bool aborted = false;
};

struct SkorokhodOptions {
    uint64_t max_stored_bm_samples = 4096;  // bm coarsening cap
    double time_budget_factor = 32.0;       // budget = factor * R^2 time units
};

// dt must be <= 1e-2 (resolution guard).
CouplingSample skorokhod_embed(Rng& rng, double dt, int64_t exit_radius,
                               const SkorokhodOptions& opts = {});

// Sup of |W(t)-S(t)| over t <= t_max evaluated from the *stored* paths, at
// every stored grid time and at every alignment knot (S is piecewise constant
// between knots; both one-sided limits are probed at each jump).
double max_coupling_deviation(const CouplingSample& sample, double t_max);

}  // namespace flab
