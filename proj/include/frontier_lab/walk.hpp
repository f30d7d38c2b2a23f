#pragma once

#include <optional>
#include <vector>

#include "frontier_lab/base.hpp"
#include "frontier_lab/rng.hpp"

namespace flab {

// A nearest-neighbour lattice path.  scale_index k encodes the dyadic
// convention: the target exit radius is R = 2^k lattice units, which plays
// the role of lattice spacing e^{-n} with n = k ln 2.
struct Walk {
    Vec2i start{0, 0};
    std::vector<uint8_t> steps;
    uint16_t scale_index = 0;

    size_t length() const { return steps.size(); }
    int64_t exit_radius() const { return dyadic_radius(scale_index); }
    double log_scale() const { return scale_index * std::log(2.0); }

    Vec2i vertex_at(size_t i) const {
        Vec2i v = start;
        for (size_t j = 0; j < i; ++j) v = v + dir_step(steps[j]);
        return v;
    }
    std::vector<Vec2i> vertices() const {
        std::vector<Vec2i> out;
        out.reserve(steps.size() + 1);
        Vec2i v = start;
        out.push_back(v);
        for (uint8_t d : steps) {
            v = v + dir_step(d);
            out.push_back(v);
        }
        return out;
    }
    Vec2i last_vertex() const { return vertex_at(steps.size()); }
};

struct WalkSampleResult {
    std::optional<Walk> walk;  // empty iff the step budget was exhausted
    bool aborted = false;
};

inline uint64_t default_step_budget(int64_t exit_radius) { return 100ull * uint64_t(exit_radius) * uint64_t(exit_radius); }

// Simple random walk from `start` run until its Euclidean norm first reaches
// exit_radius.  All vertices before the last have norm < exit_radius.
WalkSampleResult sample_walk_until_exit(Rng& rng, Vec2i start, int64_t exit_radius,
                                        uint64_t step_budget = 0);

// Fixed-length simple random walk (test utility for oracle comparisons).
Walk sample_walk_fixed_length(Rng& rng, Vec2i start, size_t n_steps);

}  // namespace flab
