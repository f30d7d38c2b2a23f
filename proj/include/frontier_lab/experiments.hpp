#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frontier_lab/measures.hpp"
#include "frontier_lab/mc.hpp"
#include "frontier_lab/stats.hpp"

namespace flab {

using ordered_json = nlohmann::ordered_json;

// Shared Monte Carlo experiment configuration.  Workers never influence the
// result bytes; every other field enters the config digest.
struct ExperimentConfig {
    std::vector<int64_t> scales;  // dyadic radii
    uint64_t samples_per_scale = 1000;
    uint64_t base_seed = 42;
    int workers = 0;  // <= 0: FRONTIER_LAB_THREADS, then hardware

    // Event parameters (used by the experiments that need them).
    int64_t inner_radius = 16;  // one-arm start circle
    // One-arm non-disconnection is anchored at the walk's starting vertex on
    // the circle of radius inner_radius (the unit-scale arm event, whose
    // decay reaches its 1/4 asymptote within desk-scale windows).  The
    // disk-of-radius-r region variant needs moduli R/r >~ 100 before its
    // decay leaves the crossover; it stays available behind this flag.
    bool one_arm_disk_region = false;
    double c1 = 1.0;                              // duration calibration
    NiceBox nice_box{3, 3, 0};                    // [3/8,1/2] x [0,1/8]
    std::vector<int64_t> separations{4, 8, 16, 32, 64};  // two-point, lattice units
    int64_t annulus_outer = 128;                  // crossing/bad-disk outer radius
    std::vector<int64_t> annulus_inners{32, 16, 8};
    int crossing_k_max = 4;

    void validate() const;
};

struct ExperimentResult {
    std::string experiment;
    ordered_json json;
    ExponentFit fit;      // primary fit when the experiment has one
    bool valid = true;
};

// Stable FNV-1a digest of the canonical config serialization.
std::string config_digest(const ordered_json& config);

ExperimentResult one_arm_experiment(const ExperimentConfig& cfg);
ExperimentResult two_arm_experiment(const ExperimentConfig& cfg);
ExperimentResult frontier_dimension_experiment(const ExperimentConfig& cfg);
ExperimentResult green_shape_experiment(const ExperimentConfig& cfg);
ExperimentResult two_point_experiment(const ExperimentConfig& cfg);
// Fits for every k in 1..cfg.crossing_k_max on shared samples; `fit` holds k=1.
ExperimentResult crossing_tail_experiment(const ExperimentConfig& cfg);
ExperimentResult bad_disk_experiment(const ExperimentConfig& cfg);
ExperimentResult frontier_disk_ratio_experiment(const ExperimentConfig& cfg);
ExperimentResult occupation_stability_experiment(const ExperimentConfig& cfg);

struct CouplingConfig {
    std::vector<int64_t> scales{64, 128, 256, 512, 1024, 2048};
    uint64_t samples_per_scale = 1000;
    uint64_t base_seed = 42;
    int workers = 0;
    // Crossing-time resolution: dt_small up to dt_small_max_radius, dt_large
    // beyond (both within the 1e-2 guard of the embedding).
    double dt_small = 1e-3;
    double dt_large = 1e-2;
    int64_t dt_small_max_radius = 256;
    uint64_t uniformity_min_steps = 100000;

    double dt_for(int64_t radius) const { return radius <= dt_small_max_radius ? dt_small : dt_large; }
};

ExperimentResult coupling_deviation_experiment(const CouplingConfig& cfg);

ExperimentResult run_experiment_by_name(const std::string& name, const ExperimentConfig& cfg);

}  // namespace flab
