#include "frontier_lab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace flab {

Vec2d BmPath::at(double t) const {
    if (samples.empty()) return origin;
    double step = dt * double(stride);
    if (t <= 0.0) return samples.front();
    double k = t / step;
    size_t i = size_t(k);
    if (i + 1 >= samples.size()) return samples.back();
    double frac = k - double(i);
    return {samples[i].x + frac * (samples[i + 1].x - samples[i].x),
            samples[i].y + frac * (samples[i + 1].y - samples[i].y)};
}

BmSampleResult sample_bm_grid(Rng& rng, double dt, double stop_radius, uint64_t step_budget) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_bm_grid: dt must be positive");
    if (step_budget == 0) {
        double t_budget = 32.0 * std::max(1.0, stop_radius * stop_radius);
        step_budget = uint64_t(t_budget / dt) + 1;
    }
    BmPath p;
    p.dt = dt;
    p.origin = {0.0, 0.0};
    p.samples.push_back(p.origin);
    const double r2 = stop_radius * stop_radius;
    double x = 0.0, y = 0.0;
    if (x * x + y * y >= r2) return {std::move(p), false};
    const double sd = std::sqrt(dt);
    for (uint64_t i = 0; i < step_budget; ++i) {
        x += sd * rng.gaussian();
        y += sd * rng.gaussian();
        p.samples.push_back({x, y});
        if (x * x + y * y >= r2) return {std::move(p), false};
    }
    return {std::nullopt, true};
}

namespace {

// One Brownian coordinate with unit-level crossing detection.  The anchor is
// the exact integer value at the last completed crossing.
struct CoordState {
    double x = 0.0;
    double prev_x = 0.0;
    int64_t anchor = 0;
    std::deque<std::pair<double, int8_t>> pending;  // (interpolated time, sign)

    // Called after x moved at grid time t (from t - dt).  Interpolates the
    // crossing instant linearly inside the grid interval.
    void detect(double t, double dt) {
        for (;;) {
            double up = double(anchor) + 1.0;
            double dn = double(anchor) - 1.0;
            if (x >= up) {
                double frac = (up - prev_x) / (x - prev_x);
                pending.emplace_back(t - dt + frac * dt, int8_t(1));
                anchor += 1;
            } else if (x <= dn) {
                double frac = (dn - prev_x) / (x - prev_x);
                pending.emplace_back(t - dt + frac * dt, int8_t(-1));
                anchor -= 1;
            } else {
                break;
            }
        }
    }
};

}  // namespace

CouplingSample skorokhod_embed(Rng& rng, double dt, int64_t exit_radius,
                               const SkorokhodOptions& opts) {
    if (!(dt > 0.0 && dt <= 1e-2))
        throw std::invalid_argument("skorokhod_embed: dt must be in (0, 1e-2]");
    if (exit_radius < 1) throw std::invalid_argument("skorokhod_embed: exit_radius must be >= 1");

    CouplingSample out;
    out.exit_radius = double(exit_radius);
    out.bm.dt = dt;
    out.bm.origin = {0.0, 0.0};
    out.walk.start = {0, 0};
    {
        uint16_t k = 0;
        while ((int64_t(1) << k) < exit_radius) ++k;
        out.walk.scale_index = k;
    }

    const double R2 = double(exit_radius) * double(exit_radius);
    const double time_budget = opts.time_budget_factor * std::max(1.0, R2);
    const uint64_t max_grid_steps = uint64_t(time_budget / dt) + 1;

    // Storage coarsening so bm stays bounded.
    uint64_t expect = uint64_t(0.5 * R2 / dt) + 2;
    size_t stride = 1;
    while (expect / stride > opts.max_stored_bm_samples) stride *= 2;
    out.bm.stride = stride;
    out.bm.samples.push_back({0.0, 0.0});

    CoordState cs[2];
    const double sd = std::sqrt(dt);

    // Walk state.
    int64_t sx = 0, sy = 0;
    int64_t s_norm2 = 0;
    bool walk_exited = false, bm_exited = false;
    double walk_exit_time = 0.0, bm_exit_time = 0.0;
    double last_align = 0.0;
    int pending_coord = rng.coin() ? 1 : 0;  // Z: uniform coordinate per step

    double max_dev2 = 0.0;
    auto eval_dev = [&](double wx, double wy) {
        double dx = wx - double(sx), dy = wy - double(sy);
        double d2 = dx * dx + dy * dy;
        if (d2 > max_dev2) max_dev2 = d2;
    };

    // Consumes queued crossings in selector order; returns false once the
    // walk exits.
    auto consume = [&]() {
        while (!cs[pending_coord].pending.empty()) {
            auto [tc, sign] = cs[pending_coord].pending.front();
            cs[pending_coord].pending.pop_front();
            if (pending_coord == 0) {
                s_norm2 += sign > 0 ? 2 * sx + 1 : -2 * sx + 1;
                sx += sign;
                out.walk.steps.push_back(sign > 0 ? kPlusX : kMinusX);
            } else {
                s_norm2 += sign > 0 ? 2 * sy + 1 : -2 * sy + 1;
                sy += sign;
                out.walk.steps.push_back(sign > 0 ? kPlusY : kMinusY);
            }
            last_align = std::max(last_align, tc);
            out.alignment.push_back(last_align);
            eval_dev(cs[0].x, cs[1].x);
            if (double(s_norm2) >= R2) {
                walk_exited = true;
                walk_exit_time = last_align;
                return false;
            }
            pending_coord = rng.coin() ? 1 : 0;
        }
        return true;
    };

    uint64_t i = 0;
    for (; i < max_grid_steps; ++i) {
        const double t = double(i + 1) * dt;
        for (auto& c : cs) {
            c.prev_x = c.x;
            c.x += sd * rng.gaussian();
            c.detect(t, dt);
        }
        if (!consume()) break;
        eval_dev(cs[0].x, cs[1].x);
        if ((i + 1) % stride == 0) out.bm.samples.push_back({cs[0].x, cs[1].x});
        if (cs[0].x * cs[0].x + cs[1].x * cs[1].x >= R2) {
            bm_exited = true;
            bm_exit_time = t;
            consume();  // drain crossings already completed by the horizon
            break;
        }
    }

    if (!(walk_exited || bm_exited)) {
        out.aborted = true;
        out.horizon = double(i) * dt;
    } else {
        out.horizon = walk_exited ? walk_exit_time : bm_exit_time;
    }
    out.walk_exited = walk_exited;
    out.bm_exited = bm_exited;
    out.max_deviation = std::sqrt(max_dev2);
    return out;
}

double max_coupling_deviation(const CouplingSample& sample, double t_max) {
    if (t_max < 0.0) throw std::invalid_argument("max_coupling_deviation: t_max must be >= 0");
    auto verts = sample.walk.vertices();
    const auto& align = sample.alignment;

    double best2 = 0.0;
    auto probe = [&](Vec2d w, Vec2d s) {
        double dx = w.x - s.x, dy = w.y - s.y;
        double d2 = dx * dx + dy * dy;
        if (d2 > best2) best2 = d2;
    };

    // Walk position index active at time t: steps with alignment <= t.
    auto s_at = [&](double t) -> Vec2d {
        size_t lo = std::upper_bound(align.begin(), align.end(), t) - align.begin();
        return to_vec2d(verts[lo]);
    };

    double step = sample.bm.dt * double(sample.bm.stride);
    size_t n = sample.bm.samples.size();
    for (size_t k = 0; k < n; ++k) {
        double t = double(k) * step;
        if (t > t_max) break;
        probe(sample.bm.samples[k], s_at(t));
    }
    for (size_t j = 0; j < align.size(); ++j) {
        double t = align[j];
        if (t > t_max) break;
        Vec2d w = sample.bm.at(t);
        // Left limit exists on [0, t_max] only for interior jump instants;
        // stacked steps at one instant expose just the pre-stack position.
        if (t > 0.0 && (j == 0 || align[j - 1] < t)) probe(w, to_vec2d(verts[j]));
        probe(w, to_vec2d(verts[j + 1]));
    }
    return std::sqrt(best2);
}

}  // namespace flab
