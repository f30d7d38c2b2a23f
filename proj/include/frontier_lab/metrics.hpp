#pragma once

#include <span>
#include <vector>

#include "frontier_lab/base.hpp"
#include "frontier_lab/frontier.hpp"

namespace flab {

// Planar curve with an explicit time parametrization (piecewise linear).
struct TimedPolyline {
    std::vector<Vec2d> points;
    std::vector<double> times;  // nondecreasing, times.front() == 0

    double duration() const { return times.empty() ? 0.0 : times.back(); }
    Vec2d at(double t) const;
    void validate() const;
};

TimedPolyline make_timed(const FrontierCurve& curve, double space_scale = 1.0);

double hausdorff_distance(std::span<const Vec2d> a, std::span<const Vec2d> b);

// Continuous Frechet distance (metric modulo reparametrization) within
// +-tol, via free-space feasibility and bisection.
double frechet_distance(const TimedPolyline& a, const TimedPolyline& b, double tol);

// Natural-parametrization metric: inf over increasing bijections alpha of
// sup|alpha(t)-t| + sup|b(alpha(t))-a(t)|, approximated by minimizing
// T + S(T) over a tol-grid of time bounds T, where S(T) is the least spatial
// bound jointly feasible with |t-s| <= T.
double np_distance(const TimedPolyline& a, const TimedPolyline& b, double tol);

// m points at equal time intervals, linearly interpolated.
TimedPolyline resample_uniform(const TimedPolyline& curve, size_t m);

}  // namespace flab
