#include "frontier_lab/walk.hpp"

#include <cmath>

namespace flab {

static uint16_t scale_index_for_radius(int64_t exit_radius) {
    uint16_t k = 0;
    while ((int64_t(1) << k) < exit_radius) ++k;
    return k;
}

WalkSampleResult sample_walk_until_exit(Rng& rng, Vec2i start, int64_t exit_radius,
                                        uint64_t step_budget) {
    if (start.norm2() >= exit_radius * exit_radius)
        throw std::invalid_argument("sample_walk_until_exit: |start| must be < exit_radius");
    if (step_budget == 0) step_budget = default_step_budget(exit_radius);

    Walk w;
    w.start = start;
    w.scale_index = scale_index_for_radius(exit_radius);
    w.steps.reserve(size_t(exit_radius) * size_t(exit_radius) + 64);

    const int64_t r2 = exit_radius * exit_radius;
    int64_t x = start.x, y = start.y;
    int64_t n2 = x * x + y * y;
    for (uint64_t t = 0; t < step_budget; ++t) {
        uint8_t d = rng.direction();
        switch (d) {
            case kPlusX: n2 += 2 * x + 1; ++x; break;
            case kMinusX: n2 += -2 * x + 1; --x; break;
            case kPlusY: n2 += 2 * y + 1; ++y; break;
            default: n2 += -2 * y + 1; --y; break;
        }
        w.steps.push_back(d);
        if (n2 >= r2) return {std::move(w), false};
    }
    return {std::nullopt, true};
}

Walk sample_walk_fixed_length(Rng& rng, Vec2i start, size_t n_steps) {
    Walk w;
    w.start = start;
    w.steps.reserve(n_steps);
    for (size_t i = 0; i < n_steps; ++i) w.steps.push_back(rng.direction());
    // Pick the smallest dyadic scale whose disk contains the whole path.
    int64_t max2 = 0;
    Vec2i v = start;
    for (uint8_t d : w.steps) {
        v = v + dir_step(d);
        max2 = std::max(max2, v.norm2());
    }
    int64_t r = int64_t(std::ceil(std::sqrt(double(max2)))) + 1;
    w.scale_index = scale_index_for_radius(r);
    return w;
}

}  // namespace flab
