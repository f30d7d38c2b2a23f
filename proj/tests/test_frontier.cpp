#include <doctest.h>

#include <algorithm>
#include <set>

#include "frontier_lab/frontier.hpp"
#include "frontier_lab/walk.hpp"
#include "pixel_oracle.hpp"

using namespace flab;

namespace {

Walk make_walk(Vec2i start, std::vector<uint8_t> steps, uint16_t scale = 4) {
    Walk w;
    w.start = start;
    w.steps = std::move(steps);
    w.scale_index = scale;
    return w;
}

std::set<std::pair<int, int>> vset(const std::vector<Vec2i>& vs) {
    std::set<std::pair<int, int>> out;
    for (auto v : vs) out.insert({v.x, v.y});
    return out;
}

// The walk with an enclosed interior vertex: (1,1) -> around the side-2
// square -> back to (1,0).
Walk enclosing_walk() {
    return make_walk({1, 1}, {kMinusY, kPlusX, kPlusY, kPlusY, kMinusX, kMinusX, kMinusY, kMinusY,
                              kPlusX});
}

}  // namespace

TEST_CASE("single edge: both endpoints on the frontier") {
    auto occ = build_occupancy(make_walk({0, 0}, {kPlusX}));
    CHECK(vset(frontier_vertices(occ)) ==
          std::set<std::pair<int, int>>{{0, 0}, {1, 0}});
}

TEST_CASE("enclosed vertex is excluded from the frontier") {
    auto occ = build_occupancy(enclosing_walk());
    auto fv = vset(frontier_vertices(occ));
    CHECK(fv.size() == 8);
    CHECK(!fv.count({1, 1}));
    CHECK(fv.count({0, 0}));
    CHECK(fv.count({2, 2}));
    CHECK(!is_frontier_point(occ, {1, 1}));
    CHECK(is_frontier_point(occ, {2, 1}));
    CHECK(!is_frontier_point(occ, {7, 7}));  // unvisited
}

TEST_CASE("lexicographically largest visited vertex is on the frontier") {
    for (uint64_t rep = 0; rep < 20; ++rep) {
        Rng rng = make_rng(91, rep);
        Walk w = sample_walk_fixed_length(rng, {0, 0}, 150);
        auto occ = build_occupancy(w);
        Vec2i best = occ.vertices()[0];
        for (Vec2i v : occ.vertices())
            if (v.x > best.x || (v.x == best.x && v.y > best.y)) best = v;
        CHECK(is_frontier_point(occ, best));
    }
}

TEST_CASE("tracing a square loop gives a closed CCW curve over the 8 boundary vertices") {
    Walk loop = make_walk(
        {0, 0}, {kPlusX, kPlusX, kPlusY, kPlusY, kMinusX, kMinusX, kMinusY, kMinusY}, 2);
    auto curve = trace_frontier_curve(loop, 1.0);
    CHECK(curve.vertices.front() == curve.vertices.back());
    CHECK(curve.traversal_count() == 8);
    CHECK(curve.signed_area() == doctest::Approx(4.0));
    auto occ = build_occupancy(loop);
    CHECK(vset({curve.vertices.begin(), curve.vertices.end() - 1}) ==
          vset(frontier_vertices(occ)));
    // Every boundary vertex appears exactly once.
    CHECK(curve.vertices.size() == 9);
    CHECK(curve.per_traversal_duration == doctest::Approx(std::pow(2.0, -8.0 / 3.0)));
    CHECK(curve.total_duration ==
          doctest::Approx(8.0 * curve.per_traversal_duration));
}

TEST_CASE("a dangling edge is traversed once per exposed side") {
    Walk w = make_walk({0, 0}, {kPlusX, kPlusX, kMinusX, kPlusY, kMinusX, kMinusY}, 2);
    auto curve = trace_frontier_curve(w, 1.0);
    CHECK(curve.vertices.front() == curve.vertices.back());
    int spur_count = 0;
    for (size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
        Vec2i a = curve.vertices[i], b = curve.vertices[i + 1];
        if ((a == Vec2i{1, 0} && b == Vec2i{2, 0}) || (a == Vec2i{2, 0} && b == Vec2i{1, 0}))
            ++spur_count;
    }
    CHECK(spur_count == 2);
    CHECK(curve.traversal_count() == 6);
    CHECK(curve.signed_area() == doctest::Approx(1.0));
}

TEST_CASE("traced curves of exit-stopped walks satisfy the contract") {
    for (uint64_t rep = 0; rep < 25; ++rep) {
        Rng rng = make_rng(92, rep);
        int64_t R = 8 << rng.below(3);
        auto sr = sample_walk_until_exit(rng, {0, 0}, R);
        REQUIRE(sr.walk.has_value());
        auto curve = trace_frontier_curve(*sr.walk, 1.0);
        CHECK(curve.vertices.front() == curve.vertices.back());
        CHECK(curve.vertices.front() == sr.walk->last_vertex());
        CHECK(curve.signed_area() > 0.0);
        auto occ = build_occupancy(*sr.walk);
        CHECK(vset({curve.vertices.begin(), curve.vertices.end() - 1}) ==
              vset(frontier_vertices(occ)));
        CHECK(curve.total_duration ==
              curve.per_traversal_duration * double(curve.traversal_count()));
        // Consecutive curve vertices are lattice neighbours along walk edges.
        for (size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
            CHECK((curve.vertices[i + 1] - curve.vertices[i]).norm2() == 1);
            CHECK(occ.has_edge(curve.vertices[i], curve.vertices[i + 1]));
        }
    }
}

TEST_CASE("frontier is equivariant under translation") {
    Rng rng = make_rng(93, 0);
    Walk w = sample_walk_fixed_length(rng, {0, 0}, 120);
    auto fv = vset(frontier_vertices(build_occupancy(w)));
    Walk wt = w;
    wt.start = {w.start.x + 9, w.start.y - 5};
    auto fvt = vset(frontier_vertices(build_occupancy(wt)));
    std::set<std::pair<int, int>> shifted;
    for (auto [x, y] : fv) shifted.insert({x + 9, y - 5});
    CHECK(shifted == fvt);
}

TEST_CASE("adding steps far away leaves a local frontier unchanged") {
    // A small loop near the origin plus a long excursion far to the east.
    Walk base = make_walk({0, 0},
                          {kPlusX, kPlusX, kPlusY, kPlusY, kMinusX, kMinusX, kMinusY, kMinusY});
    Walk extended = base;
    for (int i = 0; i < 30; ++i) extended.steps.push_back(kPlusX);
    auto fv_base = vset(frontier_vertices(build_occupancy(base)));
    auto fv_ext = vset(frontier_vertices(build_occupancy(extended)));
    // Every base frontier vertex is still on the extended frontier.
    for (auto v : fv_base) CHECK(fv_ext.count(v));
}

TEST_CASE("frontier disk event: straight chord is a frontier disk") {
    std::vector<uint8_t> steps(20, kPlusX);
    Walk w = make_walk({-10, 0}, steps, 4);
    CHECK(frontier_disk_event(w, {0, 0}, 3.0, 6.0));
}

TEST_CASE("frontier disk event: enclosing prefix defeats clause (ii)") {
    // Walk that first loops around the disk at radius ~5, then dives in and
    // leaves outward.
    std::vector<uint8_t> steps;
    auto run = [&](uint8_t d, int n) { steps.insert(steps.end(), size_t(n), d); };
    run(kPlusX, 5);    // (-10,5) -> (-5,5)
    run(kPlusX, 10);   // ... -> (5,5)
    run(kMinusY, 10);  // -> (5,-5)
    run(kMinusX, 10);  // -> (-5,-5)
    run(kPlusY, 10);   // -> (-5,5)  loop closed around the disk
    run(kPlusX, 5);    // -> (0,5)
    run(kMinusY, 5);   // -> (0,0) dive into the disk
    run(kPlusY, 14);   // -> (0,14) leave
    Walk w = make_walk({-10, 5}, steps, 4);
    CHECK(!frontier_disk_event(w, {0, 0}, 3.0, 8.0));
}

TEST_CASE("frontier disk event: walk missing the disk is false") {
    std::vector<uint8_t> steps(12, kPlusX);
    Walk w = make_walk({2, 9}, steps, 4);
    CHECK(!frontier_disk_event(w, {0, 0}, 3.0, 6.0));
}

TEST_CASE("frontier disk event matches a clause-by-clause oracle") {
    int positives = 0;
    for (uint64_t rep = 0; rep < 40; ++rep) {
        Rng rng = make_rng(94, rep);
        auto sr = sample_walk_until_exit(rng, {0, 0}, 32);
        REQUIRE(sr.walk.has_value());
        const Walk& w = *sr.walk;
        Vec2i center{int32_t(6 + rng.below(8)), int32_t(rng.below(8)) - 4};
        double disk_r = 4.0, env_r = 9.0;
        if (std::hypot(double(w.start.x - center.x), double(w.start.y - center.y)) <= disk_r)
            continue;
        bool mine = frontier_disk_event(w, center, disk_r, env_r);

        // Independent re-evaluation: clause scan plus pixel-oracle for (ii).
        auto verts = w.vertices();
        size_t first = verts.size(), last = 0;
        for (size_t i = 0; i < verts.size(); ++i) {
            double d2 = double((verts[i] - center).norm2());
            if (d2 <= disk_r * disk_r) {
                if (first == verts.size()) first = i;
                last = i;
            }
        }
        bool expect;
        if (first == verts.size()) {
            expect = false;
        } else {
            bool omega_ok = true;
            for (size_t i = first; i <= last; ++i)
                if (double((verts[i] - center).norm2()) > env_r * env_r) omega_ok = false;
            OccupancyBuilder b;
            b.add_path(w.start, std::span<const uint8_t>(w.steps.data(), first));
            if (last < w.steps.size())
                b.add_path(verts[last],
                           std::span<const uint8_t>(w.steps.data() + last, w.steps.size() - last));
            b.include_rect({center.x - 6, center.y - 6, center.x + 6, center.y + 6});
            auto occ = b.build();
            flab::testing::PixelOracle oracle(occ);
            expect = omega_ok && !oracle.disconnects(Region::disk(to_vec2d(center), disk_r));
        }
        CHECK(mine == expect);
        if (mine) ++positives;
    }
    CHECK(positives > 0);
}

TEST_CASE("separation quality of two opposite rays is exactly one") {
    const int L = 24;
    std::vector<uint8_t> right(L, kPlusX), left(L, kMinusX);
    auto occ1 = build_occupancy(make_walk({0, 0}, right));
    auto occ2 = build_occupancy(make_walk({0, 0}, left));
    double q = separation_quality(occ1, occ2, {L, 0}, {-L, 0}, double(L));
    CHECK(q == doctest::Approx(1.0));
}

TEST_CASE("separation quality is zero when the origin is not on the frontier") {
    std::vector<uint8_t> seg(6, kPlusY);
    auto occ1 = build_occupancy(make_walk({3, 0}, seg));
    auto occ2 = build_occupancy(make_walk({-3, 0}, seg));
    CHECK(separation_quality(occ1, occ2, {3, 6}, {-3, 6}, 8.0) == 0.0);
}

TEST_CASE("separation quality never increases when edges are added") {
    const int L = 16;
    std::vector<uint8_t> right(L, kPlusX), left(L, kMinusX);
    auto occ1 = build_occupancy(make_walk({0, 0}, right));
    auto occ2 = build_occupancy(make_walk({0, 0}, left));
    double q0 = separation_quality(occ1, occ2, {L, 0}, {-L, 0}, double(L));
    // Add a hook to the first ray that curls toward the origin.
    std::vector<uint8_t> hooked = right;
    for (int i = 0; i < 6; ++i) hooked.push_back(kPlusY);
    for (int i = 0; i < L - 2; ++i) hooked.push_back(kMinusX);
    auto occ1b = build_occupancy(make_walk({0, 0}, hooked));
    double q1 = separation_quality(occ1b, occ2, {L, 0}, {-L, 0}, double(L));
    CHECK(q1 <= q0 + 1e-12);
}
