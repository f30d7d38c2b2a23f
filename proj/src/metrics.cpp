#include "frontier_lab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flab {

void TimedPolyline::validate() const {
    if (points.size() != times.size()) throw std::invalid_argument("TimedPolyline: size mismatch");
    if (points.empty()) throw std::invalid_argument("TimedPolyline: empty");
    if (times.front() != 0.0) throw std::invalid_argument("TimedPolyline: times must start at 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1]) throw std::invalid_argument("TimedPolyline: times decrease");
}

Vec2d TimedPolyline::at(double t) const {
    if (points.empty()) return {};
    if (t <= times.front()) return points.front();
    if (t >= times.back()) return points.back();
    size_t i = size_t(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    double t0 = times[i - 1], t1 = times[i];
    double f = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
    return points[i - 1] + f * (points[i] - points[i - 1]);
}

TimedPolyline make_timed(const FrontierCurve& curve, double space_scale) {
    TimedPolyline p;
    p.points.reserve(curve.vertices.size());
    p.times.reserve(curve.vertices.size());
    for (size_t i = 0; i < curve.vertices.size(); ++i) {
        p.points.push_back(space_scale * to_vec2d(curve.vertices[i]));
        p.times.push_back(double(i) * curve.per_traversal_duration);
    }
    return p;
}

double hausdorff_distance(std::span<const Vec2d> a, std::span<const Vec2d> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty set");
    auto one_sided = [](std::span<const Vec2d> from, std::span<const Vec2d> to) {
        double worst = 0.0;
        for (const Vec2d& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2d& q : to) best = std::min(best, (p - q).norm2());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::sqrt(std::max(one_sided(a, b), one_sided(b, a)));
}

namespace {

struct Interval {
    double lo = 1.0, hi = 0.0;  // empty by default
    bool empty() const { return lo > hi; }
};

// Free interval in t on the segment q0->q1 (parametrized by u in [t0,t1])
// against the fixed point p: |q(u) - p| <= S, intersected with the time band
// |u - s_fixed| <= T.
Interval edge_free(const Vec2d& q0, const Vec2d& q1, double t0, double t1, const Vec2d& p,
                   double S, double s_fixed, double T) {
    Interval out;
    Vec2d d = q1 - q0;
    Vec2d f = q0 - p;
    double A = d.norm2();
    double lo_u, hi_u;
    if (A == 0.0) {
        if (f.norm2() > S * S) return out;
        lo_u = 0.0;
        hi_u = 1.0;
    } else {
        double B = 2.0 * (f.x * d.x + f.y * d.y);
        double C = f.norm2() - S * S;
        double disc = B * B - 4 * A * C;
        if (disc < 0.0) return out;
        double sq = std::sqrt(disc);
        lo_u = (-B - sq) / (2 * A);
        hi_u = (-B + sq) / (2 * A);
        if (hi_u < 0.0 || lo_u > 1.0) return out;
        lo_u = std::max(lo_u, 0.0);
        hi_u = std::min(hi_u, 1.0);
    }
    out.lo = t0 + lo_u * (t1 - t0);
    out.hi = t0 + hi_u * (t1 - t0);
    if (T < std::numeric_limits<double>::infinity()) {
        out.lo = std::max(out.lo, s_fixed - T);
        out.hi = std::min(out.hi, s_fixed + T);
    }
    return out;
}

// Monotone-matching feasibility on the joint free-space diagram of timed
// polylines a (horizontal axis, parameter s) and b (vertical, parameter t):
// |a(s)-b(t)| <= S and |s-t| <= T simultaneously.
bool joint_feasible(const TimedPolyline& a, const TimedPolyline& b, double S, double T) {
    const size_t m = a.points.size(), n = b.points.size();
    if (dist(a.points.front(), b.points.front()) > S) return false;
    if (dist(a.points.back(), b.points.back()) > S) return false;
    if (std::abs(a.duration() - b.duration()) > T) return false;
    if (m == 1 || n == 1) {
        // One curve is a point: every point of the other must be within S,
        // and the time band must cover the other's duration.
        const TimedPolyline& c = (m == 1) ? b : a;
        const Vec2d p = (m == 1) ? a.points[0] : b.points[0];
        for (const Vec2d& q : c.points)
            if (dist(q, p) > S) return false;
        return true;
    }

    // Reachable intervals on the vertical edges of the current column
    // (s = a.times[i]) and on the horizontal edge currently being pushed up.
    std::vector<Interval> vert(n - 1);
    std::vector<Interval> next(n - 1);
    std::vector<Interval> horiz(m - 1);

    for (size_t j = 0; j + 1 < n; ++j) {
        Interval f = edge_free(b.points[j], b.points[j + 1], b.times[j], b.times[j + 1],
                               a.points[0], S, a.times[0], T);
        if (j == 0) {
            vert[0] = f;
            if (!f.empty() && f.lo > b.times[0]) vert[0] = Interval{};  // must start at corner
            if (!f.empty() && f.lo <= b.times[0] && b.times[0] <= f.hi) vert[0] = {b.times[0], f.hi};
        } else {
            // Continue up the left boundary only through contiguous free space.
            if (!vert[j - 1].empty() && vert[j - 1].hi >= b.times[j] && !f.empty() &&
                f.lo <= b.times[j])
                vert[j] = {b.times[j], f.hi};
            else
                vert[j] = Interval{};
        }
    }
    for (size_t i = 0; i + 1 < m; ++i) {
        Interval f = edge_free(a.points[i], a.points[i + 1], a.times[i], a.times[i + 1],
                               b.points[0], S, b.times[0], T);
        if (i == 0) {
            if (!f.empty() && f.lo <= a.times[0] && a.times[0] <= f.hi)
                horiz[0] = {a.times[0], f.hi};
            else
                horiz[0] = Interval{};
        } else {
            if (!horiz[i - 1].empty() && horiz[i - 1].hi >= a.times[i] && !f.empty() &&
                f.lo <= a.times[i])
                horiz[i] = {a.times[i], f.hi};
            else
                horiz[i] = Interval{};
        }
    }

    for (size_t i = 0; i + 1 < m; ++i) {
        // `bottom` rolls upward through the column: bottom edge of cell (i,0)
        // is the boundary value, afterwards the top reach of the cell below.
        Interval bottom = horiz[i];
        for (size_t j = 0; j + 1 < n; ++j) {
            Interval in_left = vert[j];
            // Right edge of cell (i,j) = vertical edge at s = a.times[i+1].
            Interval right = edge_free(b.points[j], b.points[j + 1], b.times[j], b.times[j + 1],
                                       a.points[i + 1], S, a.times[i + 1], T);
            // Top edge of cell (i,j) = horizontal edge at t = b.times[j+1].
            Interval top = edge_free(a.points[i], a.points[i + 1], a.times[i], a.times[i + 1],
                                     b.points[j + 1], S, b.times[j + 1], T);
            // Cell free space is convex: an entry from below reaches the whole
            // free right edge; an entry from the left clamps it from below.
            Interval reach_right{}, reach_top{};
            if (!bottom.empty()) {
                reach_right = right;
            } else if (!in_left.empty() && !right.empty()) {
                reach_right = right;
                reach_right.lo = std::max(right.lo, in_left.lo);
            }
            if (!in_left.empty()) {
                reach_top = top;
            } else if (!bottom.empty() && !top.empty()) {
                reach_top = top;
                reach_top.lo = std::max(top.lo, bottom.lo);
            }
            if (reach_right.lo > reach_right.hi) reach_right = Interval{};
            if (reach_top.lo > reach_top.hi) reach_top = Interval{};
            next[j] = reach_right;
            bottom = reach_top;
        }
        horiz[i] = bottom;  // unused afterwards except for the final corner test
        std::swap(vert, next);
    }
    // Feasible iff the top-right corner is reachable.
    double end_t = b.times.back();
    double end_s = a.times.back();
    if (!vert[n - 2].empty() && vert[n - 2].hi >= end_t - 1e-12) return true;
    if (!horiz[m - 2].empty() && horiz[m - 2].hi >= end_s - 1e-12) return true;
    return false;
}

double max_vertex_gap(const TimedPolyline& a, const TimedPolyline& b) {
    double worst = 0.0;
    for (const Vec2d& p : a.points)
        for (const Vec2d& q : b.points) worst = std::max(worst, (p - q).norm2());
    return std::sqrt(worst);
}

}  // namespace

double frechet_distance(const TimedPolyline& a, const TimedPolyline& b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("frechet_distance: tol must be positive");
    a.validate();
    b.validate();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double lo = std::max(dist(a.points.front(), b.points.front()),
                         dist(a.points.back(), b.points.back()));
    double hi = std::max(lo, max_vertex_gap(a, b));
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (joint_feasible(a, b, mid, kInf))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double np_distance(const TimedPolyline& a, const TimedPolyline& b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("np_distance: tol must be positive");
    a.validate();
    b.validate();
    const double dur_gap = std::abs(a.duration() - b.duration());

    auto min_space = [&](double T) {
        double lo = 0.0, hi = std::max(max_vertex_gap(a, b), 1e-12);
        if (!joint_feasible(a, b, hi, T)) return std::numeric_limits<double>::infinity();
        while (hi - lo > 0.5 * tol) {
            double mid = 0.5 * (lo + hi);
            if (joint_feasible(a, b, mid, T))
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };

    double best = std::numeric_limits<double>::infinity();
    // T must cover the duration gap; beyond best the sum only grows.
    for (double T = dur_gap;; T += tol) {
        if (T >= best) break;
        double S = min_space(T);
        if (S < std::numeric_limits<double>::infinity()) best = std::min(best, T + S);
        if (T > dur_gap + 4.0 * (max_vertex_gap(a, b) + dur_gap) + 1.0) break;  // safety cap
    }
    return best;
}

TimedPolyline resample_uniform(const TimedPolyline& curve, size_t m) {
    if (m < 2) throw std::invalid_argument("resample_uniform: need m >= 2");
    curve.validate();
    TimedPolyline out;
    out.points.reserve(m);
    out.times.reserve(m);
    double dur = curve.duration();
    for (size_t i = 0; i < m; ++i) {
        double t = dur * double(i) / double(m - 1);
        out.points.push_back(curve.at(t));
        out.times.push_back(t);
    }
    if (!out.points.empty()) {
        out.points.front() = curve.points.front();
        out.points.back() = curve.points.back();
    }
    return out;
}

}  // namespace flab
