#include <doctest.h>

#include "frontier_lab/faces.hpp"
#include "frontier_lab/walk.hpp"

using namespace flab;

namespace {

Walk make_walk(Vec2i start, std::vector<uint8_t> steps, uint16_t scale = 4) {
    Walk w;
    w.start = start;
    w.steps = std::move(steps);
    w.scale_index = scale;
    return w;
}

// Square loop of side 2 starting and ending at the origin.
Walk square_loop2() {
    return make_walk({0, 0}, {kPlusX, kPlusX, kPlusY, kPlusY, kMinusX, kMinusX, kMinusY, kMinusY});
}

}  // namespace

TEST_CASE("one step walk occupies two vertices and one edge") {
    auto occ = build_occupancy(make_walk({0, 0}, {kPlusX}));
    CHECK(occ.vertex_count() == 2);
    CHECK(occ.edge_count() == 1);
    CHECK(occ.has_edge({0, 0}, {1, 0}));
}

TEST_CASE("revisited edges deduplicate") {
    auto occ = build_occupancy(make_walk({0, 0}, {kPlusX, kMinusX, kPlusX}));
    CHECK(occ.vertex_count() == 2);
    CHECK(occ.edge_count() == 1);
}

TEST_CASE("square loop of side 2 has 8 vertices and 8 edges") {
    auto occ = build_occupancy(square_loop2());
    CHECK(occ.vertex_count() == 8);
    CHECK(occ.edge_count() == 8);
    CHECK(occ.bbox().x0 == -2);
    CHECK(occ.bbox().x1 == 4);
}

TEST_CASE("face components: empty edge set is a single component") {
    OccupancyBuilder b;
    b.include_rect({0, 0, 4, 4});
    auto occ = b.build();
    auto fl = face_components(occ);
    CHECK(fl.component_count == 1);
}

TEST_CASE("face components: square loop splits faces into two components") {
    auto fl = face_components(build_occupancy(square_loop2()));
    CHECK(fl.component_count == 2);
    int32_t inner = fl.label(0, 0);
    CHECK(inner == fl.label(1, 0));
    CHECK(inner == fl.label(0, 1));
    CHECK(inner == fl.label(1, 1));
    CHECK(inner != fl.unbounded_id);
    CHECK(fl.label(-1, -1) == fl.unbounded_id);
}

TEST_CASE("disconnects: winding loop vs center vertex") {
    auto occ = build_occupancy(square_loop2());
    CHECK(disconnects(occ, Region::vertex({1, 1})));
}

TEST_CASE("disconnects: a straight segment disconnects nothing") {
    auto occ = build_occupancy(make_walk({0, 0}, {kPlusX, kPlusX, kPlusX, kPlusX, kPlusX}));
    CHECK(!disconnects(occ, Region::vertex({2, 1})));
}

TEST_CASE("disconnects: region outside the bbox throws") {
    auto occ = build_occupancy(square_loop2());
    CHECK_THROWS_AS((void)disconnects(occ, Region::vertex({100, 100})), std::invalid_argument);
}

TEST_CASE("disconnects is monotone under added edges") {
    // Deterministic seed instance: a loop already disconnecting its center.
    Walk loop = square_loop2();
    Region center = Region::vertex({1, 1});
    Rng rng = make_rng(21, 0);
    int checked = 1;
    for (int rep = 0; rep < 30; ++rep) {
        Walk extra = sample_walk_fixed_length(rng, {int32_t(rng.below(7)) - 3, 4}, 50);
        OccupancyBuilder ba;
        ba.add_walk(loop);
        ba.include_rect({-10, -10, 12, 12});
        ba.include_point({40, 40});
        auto occ1 = ba.build();
        REQUIRE(disconnects(occ1, center));
        OccupancyBuilder bb;
        bb.add_walk(loop);
        bb.add_walk(extra);
        bb.include_rect({-10, -10, 12, 12});
        bb.include_point({40, 40});
        auto occ2 = bb.build();
        CHECK(disconnects(occ2, center));
        // And the generic random direction: whenever a random occupancy
        // disconnects a probe, its supersets still do.
        Walk w1 = sample_walk_fixed_length(rng, {0, 0}, 120);
        Region target = Region::vertex({int32_t(rng.below(5)) - 2, int32_t(rng.below(5)) - 2});
        OccupancyBuilder bc;
        bc.add_walk(w1);
        bc.include_rect({-8, -8, 8, 8});
        bc.include_point({40, 40});
        auto occ3 = bc.build();
        if (disconnects(occ3, target)) {
            OccupancyBuilder bd;
            bd.add_walk(w1);
            bd.add_walk(extra);
            bd.include_rect({-8, -8, 8, 8});
            bd.include_point({40, 40});
            CHECK(disconnects(bd.build(), target));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("disconnects is translation and rotation invariant") {
    Rng rng = make_rng(33, 1);
    for (int rep = 0; rep < 10; ++rep) {
        Walk w = sample_walk_fixed_length(rng, {0, 0}, 80);
        Vec2i probe{int32_t(rng.below(7)) - 3, int32_t(rng.below(7)) - 3};
        OccupancyBuilder b0;
        b0.add_walk(w);
        b0.include_point(probe);
        bool base = disconnects(b0.build(), Region::vertex(probe));

        // Translate by (17, -9).
        Walk wt = w;
        wt.start = {w.start.x + 17, w.start.y - 9};
        OccupancyBuilder bt;
        bt.add_walk(wt);
        bt.include_point({probe.x + 17, probe.y - 9});
        CHECK(disconnects(bt.build(), Region::vertex({probe.x + 17, probe.y - 9})) == base);

        // Rotate 90 degrees CCW: (x,y) -> (-y,x); +x->+y, +y->-x, -x->-y, -y->+x.
        Walk wr;
        wr.start = {-w.start.y, w.start.x};
        static constexpr uint8_t rot[4] = {kPlusY, kMinusY, kMinusX, kPlusX};
        for (uint8_t d : w.steps) wr.steps.push_back(rot[d]);
        Vec2i pr{-probe.y, probe.x};
        OccupancyBuilder br;
        br.add_walk(wr);
        br.include_point(pr);
        CHECK(disconnects(br.build(), Region::vertex(pr)) == base);
    }
}

TEST_CASE("face labeling partitions all faces with one border component") {
    Rng rng = make_rng(55, 2);
    Walk w = sample_walk_fixed_length(rng, {0, 0}, 200);
    auto occ = build_occupancy(w);
    auto fl = face_components(occ);
    const Rect& bb = occ.bbox();
    for (int32_t fy = bb.y0; fy < bb.y1; ++fy)
        for (int32_t fx = bb.x0; fx < bb.x1; ++fx) CHECK(fl.label(fx, fy) >= 0);
    for (int32_t fx = bb.x0; fx < bb.x1; ++fx) {
        CHECK(fl.label(fx, bb.y0) == fl.unbounded_id);
        CHECK(fl.label(fx, bb.y1 - 1) == fl.unbounded_id);
    }
}
