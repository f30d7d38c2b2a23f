#include <doctest.h>

#include "frontier_lab/experiments.hpp"
#include "frontier_lab/svg.hpp"
#include "frontier_lab/walk.hpp"

using namespace flab;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.scales = {16, 32, 64};
    cfg.samples_per_scale = 200;
    cfg.base_seed = 7;
    cfg.inner_radius = 4;
    return cfg;
}

}  // namespace

TEST_CASE("estimate_probability: constant events") {
    auto est = estimate_probability([](uint64_t, Rng&) { return Outcome::kSuccess; }, 500, 2, 1, 1);
    CHECK(est.p_hat() == 1.0);
    CHECK(est.wilson.hi == doctest::Approx(1.0));
    auto est0 = estimate_probability([](uint64_t, Rng&) { return Outcome::kFailure; }, 500, 2, 1, 1);
    CHECK(est0.p_hat() == 0.0);
}

TEST_CASE("estimate_probability: fair coin lands near one half") {
    auto est = estimate_probability(
        [](uint64_t, Rng& rng) { return rng.coin() ? Outcome::kSuccess : Outcome::kFailure; },
        10000, 2, 42, 9);
    CHECK(est.p_hat() >= 0.48);
    CHECK(est.p_hat() <= 0.52);
    // Pinned for the fixed seed: reruns must reproduce it exactly.
    auto again = estimate_probability(
        [](uint64_t, Rng& rng) { return rng.coin() ? Outcome::kSuccess : Outcome::kFailure; },
        10000, 1, 42, 9);
    CHECK(again.successes == est.successes);
}

TEST_CASE("estimate_probability flags abort-heavy runs as invalid") {
    auto est = estimate_probability(
        [](uint64_t i, Rng&) { return i % 100 == 0 ? Outcome::kAborted : Outcome::kFailure; },
        1000, 2, 1, 2);
    CHECK(!est.valid);
}

TEST_CASE("worker count does not change experiment results") {
    ExperimentConfig cfg = small_config();
    cfg.workers = 1;
    auto r1 = one_arm_experiment(cfg);
    cfg.workers = 2;
    auto r2 = one_arm_experiment(cfg);
    CHECK(r1.json.dump() == r2.json.dump());

    cfg.workers = 3;
    auto r3 = frontier_dimension_experiment(cfg);
    cfg.workers = 1;
    auto r4 = frontier_dimension_experiment(cfg);
    CHECK(r3.json.dump() == r4.json.dump());
}

TEST_CASE("experiments are reproducible for a fixed config") {
    ExperimentConfig cfg = small_config();
    auto r1 = two_arm_experiment(cfg);
    auto r2 = two_arm_experiment(cfg);
    CHECK(r1.json.dump() == r2.json.dump());
    CHECK(r1.json["config_digest"] == r2.json["config_digest"]);
}

TEST_CASE("two-arm experiment at tiny scales keeps a positive origin-frontier probability") {
    ExperimentConfig cfg;
    cfg.scales = {2, 4, 8};
    cfg.samples_per_scale = 400;
    cfg.base_seed = 3;
    auto res = two_arm_experiment(cfg);
    for (const auto& e : res.json["per_scale"]) CHECK(e["p_hat"].get<double>() > 0.0);
}

TEST_CASE("config validation rejects bad scale lists") {
    ExperimentConfig cfg = small_config();
    cfg.scales = {32, 32};
    CHECK_THROWS_AS((void)one_arm_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.samples_per_scale = 10;
    CHECK_THROWS_AS((void)one_arm_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.scales = {2, 8, 16};
    CHECK_THROWS_AS((void)one_arm_experiment(cfg), std::invalid_argument);  // scale <= r
}

TEST_CASE("config digest is stable and sensitive") {
    ordered_json a = {{"x", 1}, {"y", 2}};
    ordered_json b = {{"x", 1}, {"y", 3}};
    CHECK(config_digest(a) == config_digest(a));
    CHECK(config_digest(a) != config_digest(b));
    CHECK(config_digest(a).size() == 16);
}

TEST_CASE("coupling deviation experiment smoke run is deterministic") {
    CouplingConfig cfg;
    cfg.scales = {16, 32, 64};
    cfg.samples_per_scale = 40;
    cfg.base_seed = 12;
    cfg.uniformity_min_steps = 20000;
    cfg.workers = 2;
    auto r1 = coupling_deviation_experiment(cfg);
    cfg.workers = 1;
    auto r2 = coupling_deviation_experiment(cfg);
    CHECK(r1.json.dump() == r2.json.dump());
    CHECK(r1.json["uniformity_pass"].get<bool>());
    // Median deviations grow with the scale.
    auto ps = r1.json["per_scale"];
    CHECK(ps[0]["median_deviation"].get<double>() < ps[2]["median_deviation"].get<double>());
}

TEST_CASE("frontier disk ratio experiment reports ratios above one") {
    ExperimentConfig cfg;
    cfg.scales = {32, 64, 128};
    cfg.samples_per_scale = 300;
    cfg.base_seed = 5;
    auto res = frontier_disk_ratio_experiment(cfg);
    for (const auto& e : res.json["per_scale"]) {
        if (e.contains("ratio")) CHECK(e["ratio"].get<double>() > 1.0);
    }
}

TEST_CASE("svg rendering counts one line per edge plus one frontier polyline") {
    Rng rng = make_rng(606, 0);
    auto sr = sample_walk_until_exit(rng, {0, 0}, 4);
    REQUIRE(sr.walk.has_value());
    auto occ = build_occupancy(*sr.walk);
    auto curve = trace_frontier_curve(*sr.walk);
    std::string svg = render_svg(*sr.walk, &curve);
    size_t lines = 0, pos = 0;
    while ((pos = svg.find("<line ", pos)) != std::string::npos) {
        ++lines;
        pos += 5;
    }
    CHECK(lines == occ.edge_count());
    CHECK(svg.find("<polyline") != std::string::npos);
    // Deterministic output.
    CHECK(render_svg(*sr.walk, &curve) == svg);
    // Frontier polyline vertex count equals the traced curve length.
    size_t commas = 0;
    size_t start = svg.find("<polyline");
    size_t end = svg.find("/>", start);
    for (size_t i = start; i < end; ++i)
        if (svg[i] == ',') ++commas;
    CHECK(commas == curve.vertices.size());
}
