#pragma once

#include <map>
#include <vector>

#include "frontier_lab/base.hpp"
#include "frontier_lab/sausage.hpp"

namespace flab {

// Atomic measure on scaled (unit-disk) coordinates.
struct EmpiricalMeasure {
    struct Atom {
        Vec2d point;
        double mass;
    };
    std::vector<Atom> atoms;
    uint16_t scale_index = 0;
    double c1 = 1.0;

    double total_mass() const;
};

// One atom of mass c1 * R^{-4/3} per frontier vertex, at v / R.  Vertices
// with |v| > R (the exit overshoot) are dropped so atoms stay in the closed
// unit disk.
EmpiricalMeasure occupation_measure(const std::vector<Vec2i>& frontier, uint16_t scale_index,
                                    double c1);

// Mass inside a closed rectangle [x0,x1] x [y0,y1] in unit-disk coordinates.
double measure_on_box(const EmpiricalMeasure& mu, double x0, double y0, double x1, double y1);

// Approximate bounded-Lipschitz distance: max over tent probes
// f_p(y) = max(-1, 1 - |y - p|) on the h-grid of [-1,1]^2, plus the
// constant 1, of |mu(f) - nu(f)|.  A lower bound on the true BL distance.
double bl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double h);

// Up-to-constants profile of the one-point frontier Green's function:
// d^{1/3} on |z| >= 1/2 and d^{-5/12} on |z| < 1/2, d = min(|z|, 1 - |z|).
double green_profile(Vec2d z);

// Dyadic square [k1,k1+1]/2^n x [k2,k2+1]/2^n with
// min(dist(0,V), dist(V, unit circle)) >= 2 diam(V).
struct NiceBox {
    int level = 0;
    int k1 = 0, k2 = 0;
    double x0() const { return double(k1) / (1 << level); }
    double y0() const { return double(k2) / (1 << level); }
    double x1() const { return double(k1 + 1) / (1 << level); }
    double y1() const { return double(k2 + 1) / (1 << level); }
    double diam() const { return std::sqrt(2.0) / (1 << level); }
    double dist_origin() const;
    double dist_boundary() const;
    bool satisfies_invariant() const {
        return std::min(dist_origin(), dist_boundary()) >= 2.0 * diam();
    }
};

std::vector<NiceBox> nice_boxes(int max_level);

// Least-squares constant making R^{-4/3} * count flat across scales.
struct CalibrationResult {
    double c1 = 0.0;
    double residual_spread = 0.0;  // max relative deviation from the flat level
};
CalibrationResult calibrate_c1(const std::map<int64_t, double>& mean_counts_by_radius);

// Minkowski-content estimation: for each eps, eps^{delta-2} * Area of the
// eps-sausage at refinement q, plus a linear-in-eps extrapolation over the
// last three eps values.
struct MinkowskiEstimate {
    std::vector<double> eps;
    std::vector<double> estimates;
    double extrapolated = 0.0;
};
MinkowskiEstimate minkowski_content(const PathOccupancy& set, double delta_exponent,
                                    std::vector<double> eps_list, int32_t q);
MinkowskiEstimate minkowski_content(const std::vector<Vec2i>& points, double delta_exponent,
                                    std::vector<double> eps_list, int32_t q);

}  // namespace flab
