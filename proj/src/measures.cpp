#include "frontier_lab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace flab {

double EmpiricalMeasure::total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms) m += a.mass;
    return m;
}

EmpiricalMeasure occupation_measure(const std::vector<Vec2i>& frontier, uint16_t scale_index,
                                    double c1) {
    EmpiricalMeasure mu;
    mu.scale_index = scale_index;
    mu.c1 = c1;
    const double R = double(dyadic_radius(scale_index));
    const double mass = c1 * std::pow(R, -4.0 / 3.0);
    mu.atoms.reserve(frontier.size());
    for (const Vec2i& v : frontier) {
        if (double(v.norm2()) > R * R) continue;  // exit overshoot
        mu.atoms.push_back({{double(v.x) / R, double(v.y) / R}, mass});
    }
    return mu;
}

double measure_on_box(const EmpiricalMeasure& mu, double x0, double y0, double x1, double y1) {
    double m = 0.0;
    for (const auto& a : mu.atoms)
        if (a.point.x >= x0 && a.point.x <= x1 && a.point.y >= y0 && a.point.y <= y1) m += a.mass;
    return m;
}

double bl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("bl_distance: h must be positive");
    auto probe = [&](Vec2d p) {
        double s = 0.0;
        for (const auto& a : mu.atoms) s += a.mass * std::max(-1.0, 1.0 - dist(a.point, p));
        for (const auto& a : nu.atoms) s -= a.mass * std::max(-1.0, 1.0 - dist(a.point, p));
        return std::abs(s);
    };
    // Constant probe f == 1 captures the total-mass gap.
    double best = std::abs(mu.total_mass() - nu.total_mass());
    int n = int(std::ceil(2.0 / h));
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            best = std::max(best, probe({-1.0 + ix * h, -1.0 + iy * h}));
    return best;
}

double green_profile(Vec2d z) {
    double r = z.norm();
    if (r <= 0.0 || r >= 1.0) throw std::domain_error("green_profile: need 0 < |z| < 1");
    double d = std::min(r, 1.0 - r);
    constexpr double kAlpha = 2.0 / 3.0;
    return r >= 0.5 ? std::pow(d, 1.0 - kAlpha) : std::pow(d, 0.25 - kAlpha);
}

double NiceBox::dist_origin() const {
    double dx = std::max({x0(), 0.0, -x1()});
    double dy = std::max({y0(), 0.0, -y1()});
    return std::hypot(dx, dy);
}

double NiceBox::dist_boundary() const {
    double mx = std::max(std::abs(x0()), std::abs(x1()));
    double my = std::max(std::abs(y0()), std::abs(y1()));
    return 1.0 - std::hypot(mx, my);
}

std::vector<NiceBox> nice_boxes(int max_level) {
    if (max_level < 1) throw std::invalid_argument("nice_boxes: max_level must be >= 1");
    std::vector<NiceBox> out;
    for (int n = 1; n <= max_level; ++n) {
        int lim = 1 << n;
        for (int k1 = -lim; k1 < lim; ++k1)
            for (int k2 = -lim; k2 < lim; ++k2) {
                NiceBox b{n, k1, k2};
                if (b.dist_boundary() <= 0.0) continue;  // must sit inside the disk
                if (b.satisfies_invariant()) out.push_back(b);
            }
    }
    return out;
}

CalibrationResult calibrate_c1(const std::map<int64_t, double>& mean_counts_by_radius) {
    if (mean_counts_by_radius.size() < 3)
        throw std::invalid_argument("calibrate_c1: need at least three scales");
    std::vector<double> levels;
    for (const auto& [radius, count] : mean_counts_by_radius) {
        if (!(count > 0.0)) throw std::invalid_argument("calibrate_c1: counts must be positive");
        levels.push_back(count * std::pow(double(radius), -4.0 / 3.0));
    }
    double mean = 0.0;
    for (double v : levels) mean += v;
    mean /= double(levels.size());
    double spread = 0.0;
    for (double v : levels) spread = std::max(spread, std::abs(v - mean) / mean);
    return {mean, spread};
}

static MinkowskiEstimate minkowski_impl(const std::function<SausageRaster(double)>& dilate,
                                        double delta_exponent, std::vector<double> eps_list,
                                        int32_t q) {
    if (eps_list.size() < 3)
        throw std::invalid_argument("minkowski_content: need at least 3 eps values");
    for (double e : eps_list)
        if (e < 1.0 / q) throw std::invalid_argument("minkowski_content: eps below resolution 1/q");

    MinkowskiEstimate out;
    out.eps = std::move(eps_list);
    for (double e : out.eps) {
        SausageRaster r = dilate(e);
        out.estimates.push_back(std::pow(e, delta_exponent - 2.0) * r.area());
    }
    // Linear-in-eps extrapolation to 0 over the last three values.
    size_t n = out.eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = n - 3; i < n; ++i) {
        sx += out.eps[i];
        sy += out.estimates[i];
        sxx += out.eps[i] * out.eps[i];
        sxy += out.eps[i] * out.estimates[i];
    }
    double denom = 3.0 * sxx - sx * sx;
    double slope = denom != 0.0 ? (3.0 * sxy - sx * sy) / denom : 0.0;
    out.extrapolated = (sy - slope * sx) / 3.0;
    return out;
}

MinkowskiEstimate minkowski_content(const PathOccupancy& set, double delta_exponent,
                                    std::vector<double> eps_list, int32_t q) {
    return minkowski_impl([&](double e) { return sausage_dilate(set, e, q); }, delta_exponent,
                          std::move(eps_list), q);
}

MinkowskiEstimate minkowski_content(const std::vector<Vec2i>& points, double delta_exponent,
                                    std::vector<double> eps_list, int32_t q) {
    return minkowski_impl([&](double e) { return sausage_dilate_points(points, e, q); },
                          delta_exponent, std::move(eps_list), q);
}

}  // namespace flab
