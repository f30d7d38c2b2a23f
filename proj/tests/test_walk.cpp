#include <doctest.h>

#include "frontier_lab/walk.hpp"

using namespace flab;

TEST_CASE("first step exits at radius 1") {
    for (uint64_t s = 0; s < 8; ++s) {
        Rng rng = make_rng(5, s);
        auto res = sample_walk_until_exit(rng, {0, 0}, 1);
        REQUIRE(res.walk.has_value());
        CHECK(res.walk->length() == 1);
    }
}

TEST_CASE("exit contract: exactly the last vertex reaches the radius") {
    Rng rng = make_rng(1234, 0);
    for (int rep = 0; rep < 20; ++rep) {
        auto res = sample_walk_until_exit(rng, {0, 0}, 32);
        REQUIRE(res.walk.has_value());
        auto verts = res.walk->vertices();
        for (size_t i = 0; i + 1 < verts.size(); ++i) CHECK(verts[i].norm2() < 32 * 32);
        CHECK(verts.back().norm2() >= 32 * 32);
    }
}

TEST_CASE("mean exit time tracks R^2 within 5 percent") {
    const int64_t R = 64;
    const int n = 10000;
    double total = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng = make_rng(99, uint64_t(i));
        auto res = sample_walk_until_exit(rng, {0, 0}, R);
        REQUIRE(res.walk.has_value());
        total += double(res.walk->length());
    }
    double mean = total / n;
    CHECK(mean == doctest::Approx(double(R * R)).epsilon(0.05));
}

TEST_CASE("fixed rng reproduces the step sequence") {
    Rng a = make_rng(7, 7), b = make_rng(7, 7);
    auto r1 = sample_walk_until_exit(a, {0, 0}, 2);
    auto r2 = sample_walk_until_exit(b, {0, 0}, 2);
    REQUIRE(r1.walk.has_value());
    CHECK(r1.walk->steps == r2.walk->steps);
}

TEST_CASE("step budget exhaustion is a distinguishable outcome") {
    Rng rng = make_rng(8, 0);
    auto res = sample_walk_until_exit(rng, {0, 0}, 64, /*step_budget=*/4);
    CHECK(res.aborted);
    CHECK(!res.walk.has_value());
}

TEST_CASE("start outside the disk is rejected") {
    Rng rng = make_rng(8, 0);
    CHECK_THROWS_AS((void)sample_walk_until_exit(rng, {9, 0}, 4), std::invalid_argument);
}

TEST_CASE("walk vertices derive from start and steps") {
    Walk w;
    w.start = {2, -1};
    w.steps = {kPlusX, kPlusY, kMinusX, kMinusY};
    auto v = w.vertices();
    CHECK(v.size() == 5);
    CHECK(v.front() == Vec2i{2, -1});
    CHECK(v.back() == Vec2i{2, -1});
    for (size_t i = 1; i < v.size(); ++i) CHECK((v[i] - v[i - 1]).norm2() == 1);
}
