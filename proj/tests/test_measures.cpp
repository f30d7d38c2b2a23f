#include <doctest.h>

#include <cmath>

#include "frontier_lab/measures.hpp"

using namespace flab;

TEST_CASE("occupation measure total mass follows the counting formula exactly") {
    std::vector<Vec2i> frontier;
    for (int i = 0; i < 100; ++i) frontier.push_back({i, 0});
    auto mu = occupation_measure(frontier, 8, 1.0);  // R = 256
    CHECK(mu.atoms.size() == 100);
    double unit = std::pow(256.0, -4.0 / 3.0);
    CHECK(mu.total_mass() == doctest::Approx(100.0 * unit).epsilon(1e-12));
    for (const auto& a : mu.atoms) CHECK(a.point.norm() <= 1.0 + 1e-12);
}

TEST_CASE("occupation measure of an empty frontier is the zero measure") {
    CHECK(occupation_measure({}, 6, 1.0).total_mass() == 0.0);
}

TEST_CASE("occupation measure is translation equivariant") {
    std::vector<Vec2i> fr{{10, 20}, {11, 20}};
    std::vector<Vec2i> shifted{{14, 18}, {15, 18}};
    auto mu = occupation_measure(fr, 6, 2.0);
    auto nu = occupation_measure(shifted, 6, 2.0);
    const double R = 64.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        CHECK(nu.atoms[i].point.x == doctest::Approx(mu.atoms[i].point.x + 4.0 / R));
        CHECK(nu.atoms[i].point.y == doctest::Approx(mu.atoms[i].point.y - 2.0 / R));
        CHECK(nu.atoms[i].mass == mu.atoms[i].mass);
    }
}

TEST_CASE("measure on boxes: totals, emptiness, additivity") {
    std::vector<Vec2i> fr;
    for (int i = -16; i <= 16; ++i) fr.push_back({i, i});
    auto mu = occupation_measure(fr, 5, 1.0);  // R = 32
    double total = mu.total_mass();
    CHECK(measure_on_box(mu, -1, -1, 1, 1) == doctest::Approx(total));
    CHECK(measure_on_box(mu, 0.8, -1, 1, -0.8) == 0.0);
    double left = measure_on_box(mu, -1, -1, -0.01, 1);
    double right = measure_on_box(mu, -0.009, -1, 1, 1);
    CHECK(left + right == doctest::Approx(total));
    CHECK(measure_on_box(mu, -0.5, -0.5, 0.5, 0.5) <= total);
}

TEST_CASE("bounded-Lipschitz distance of identical measures is zero") {
    std::vector<Vec2i> fr{{3, 4}, {5, 6}};
    auto mu = occupation_measure(fr, 4, 1.0);
    CHECK(bl_distance(mu, mu, 0.25) <= 1e-12);
}

TEST_CASE("bounded-Lipschitz distance separates point masses by min(|x|, 2)") {
    EmpiricalMeasure mu, nu;
    mu.atoms.push_back({{0.0, 0.0}, 1.0});
    nu.atoms.push_back({{0.4, 0.0}, 1.0});
    double d = bl_distance(mu, nu, 0.05);
    CHECK(d == doctest::Approx(0.4).epsilon(0.10));
    CHECK(bl_distance(nu, mu, 0.05) == doctest::Approx(d));
}

TEST_CASE("green profile branch values") {
    CHECK(green_profile({0.9, 0.0}) == doctest::Approx(std::pow(0.1, 1.0 / 3.0)).epsilon(1e-9));
    CHECK(green_profile({0.9, 0.0}) == doctest::Approx(0.46416).epsilon(1e-4));
    CHECK(green_profile({0.25, 0.0}) == doctest::Approx(std::pow(4.0, 5.0 / 12.0)).epsilon(1e-9));
    CHECK(green_profile({0.25, 0.0}) == doctest::Approx(1.7818).epsilon(1e-4));
}

TEST_CASE("green profile is rotation invariant and undefined at 0 and 1") {
    double r = 0.37;
    double base = green_profile({r, 0.0});
    for (double th : {0.3, 1.1, 2.9}) {
        CHECK(green_profile({r * std::cos(th), r * std::sin(th)}) ==
              doctest::Approx(base).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)green_profile({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS((void)green_profile({1.0, 0.0}), std::domain_error);
}

TEST_CASE("nice boxes include and exclude the documented candidates") {
    auto boxes = nice_boxes(4);
    bool found_330 = false;
    bool found_211 = false;
    for (const auto& b : boxes) {
        CHECK(b.satisfies_invariant());
        if (b.level == 3 && b.k1 == 3 && b.k2 == 0) found_330 = true;
        if (b.level == 2 && b.k1 == 1 && b.k2 == 1) found_211 = true;
    }
    CHECK(found_330);
    CHECK(!found_211);

    NiceBox b330{3, 3, 0};
    CHECK(b330.dist_origin() == doctest::Approx(0.375));
    CHECK(b330.dist_boundary() == doctest::Approx(0.4846).epsilon(1e-3));
    NiceBox b211{2, 1, 1};
    CHECK(b211.dist_origin() == doctest::Approx(std::sqrt(2.0) / 4.0));
    CHECK(!b211.satisfies_invariant());
}

TEST_CASE("c1 calibration recovers the flat constant") {
    std::map<int64_t, double> counts;
    const double C = 3.7;
    for (int64_t R : {64, 128, 256, 512}) counts[R] = C * std::pow(double(R), 4.0 / 3.0);
    auto cal = calibrate_c1(counts);
    CHECK(cal.c1 == doctest::Approx(C).epsilon(1e-12));
    CHECK(cal.residual_spread == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("c1 calibration tolerates multiplicative noise") {
    Rng rng = make_rng(71, 0);
    std::map<int64_t, double> counts;
    const double C = 2.2;
    for (int64_t R : {64, 128, 256, 512, 1024})
        counts[R] = C * std::pow(double(R), 4.0 / 3.0) * (1.0 + 0.05 * (2.0 * rng.u01() - 1.0));
    CHECK(calibrate_c1(counts).c1 == doctest::Approx(C).epsilon(0.05));
}

TEST_CASE("c1 calibration rejects degenerate inputs") {
    CHECK_THROWS_AS((void)calibrate_c1({{64, 100.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)calibrate_c1({{64, 100.0}, {128, 200.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)calibrate_c1({{64, -1.0}, {128, 2.0}, {256, 3.0}}),
                    std::invalid_argument);
}
