#include <doctest.h>

#include <algorithm>

#include "frontier_lab/annulus.hpp"
#include "frontier_lab/rng.hpp"

using namespace flab;

namespace {

std::vector<Vec2d> ray(Vec2d from, Vec2d to, int pieces = 1) {
    std::vector<Vec2d> out;
    for (int i = 0; i <= pieces; ++i)
        out.push_back(from + (double(i) / pieces) * (to - from));
    return out;
}

Walk straight_walk(Vec2i start, const std::vector<std::pair<uint8_t, int>>& runs,
                   uint16_t scale = 5) {
    Walk w;
    w.start = start;
    w.scale_index = scale;
    for (auto [d, n] : runs)
        for (int i = 0; i < n; ++i) w.steps.push_back(d);
    return w;
}

}  // namespace

TEST_CASE("a straight ray through the annulus is one traversal") {
    AnnulusSpec ann({0, 0}, 2.5, 7.5);
    auto segs = crossing_segments(std::span<const Vec2d>(ray({0, 0}, {10, 0}, 10)), ann);
    CHECK(segs.size() == 1);
    CHECK(!segs[0].inward);
}

TEST_CASE("out, back past the inner circle, out again: three traversals") {
    AnnulusSpec ann({0, 0}, 2.5, 7.5);
    std::vector<Vec2d> path;
    for (auto p : ray({0, 0}, {10, 0}, 10)) path.push_back(p);
    for (auto p : ray({10, 0}, {1, 0}, 9)) path.push_back(p);
    for (auto p : ray({1, 0}, {10, 0}, 9)) path.push_back(p);
    CHECK(crossing_segments(std::span<const Vec2d>(path), ann).size() == 3);
}

TEST_CASE("a path avoiding the annulus has no traversals") {
    AnnulusSpec ann({100, 100}, 2.5, 7.5);
    CHECK(crossing_segments(std::span<const Vec2d>(ray({0, 0}, {10, 0}, 10)), ann).empty());
}

TEST_CASE("crossing count is invariant under path reversal") {
    for (uint64_t rep = 0; rep < 20; ++rep) {
        Rng rng = make_rng(404, rep);
        Walk w = sample_walk_fixed_length(rng, {0, 0}, 200);
        auto verts = w.vertices();
        std::vector<Vec2i> rev(verts.rbegin(), verts.rend());
        AnnulusSpec ann({double(int(rng.below(9)) - 4), 0.0}, 2.5, 6.5);
        auto fwd = crossing_segments(std::span<const Vec2i>(verts), ann);
        auto bwd = crossing_segments(std::span<const Vec2i>(rev), ann);
        CHECK(fwd.size() == bwd.size());
    }
}

TEST_CASE("a single edge crossing both circles still counts") {
    AnnulusSpec ann({0, 0}, 0.4, 0.6);
    std::vector<Vec2d> path{{-2, 0}, {2, 0}};  // crosses everything in one hop
    auto segs = crossing_segments(std::span<const Vec2d>(path), ann);
    CHECK(segs.size() == 2);  // in through one side, out through the other... twice
}

TEST_CASE("four-arm extraction on the cross-shaped construction") {
    // In along +x, touch the core, out along +y, re-enter along +x from the
    // west, touch the core again, out along -y.
    Walk w = straight_walk({20, 0}, {{kMinusX, 20},   // -> (0,0)
                                     {kPlusY, 20},    // -> (0,20)
                                     {kMinusX, 20},   // -> (-20,20)
                                     {kMinusY, 20},   // -> (-20,0)
                                     {kPlusX, 20},    // -> (0,0)
                                     {kMinusY, 20}}); // -> (0,-20)
    auto arms = extract_four_arms(w, {0, 0}, 6.5, 12.5, 2.5);
    REQUIRE(arms.has_value());
    CHECK(arms->arms[0].front() == Vec2i{13, 0});
    CHECK(arms->arms[0].back() == Vec2i{6, 0});
    CHECK(arms->arms[1].front() == Vec2i{0, 6});
    CHECK(arms->arms[1].back() == Vec2i{0, 13});
    CHECK(arms->arms[2].front() == Vec2i{-13, 0});
    CHECK(arms->arms[2].back() == Vec2i{-6, 0});
    CHECK(arms->arms[3].front() == Vec2i{0, -6});
    CHECK(arms->arms[3].back() == Vec2i{0, -13});
    CHECK(bad_disk_event(*arms));

    // Each arm is a single traversal of the annulus.
    AnnulusSpec ann({0, 0}, 6.5, 12.5);
    for (const auto& arm : arms->arms) {
        auto segs = crossing_segments(std::span<const Vec2i>(arm), ann);
        CHECK(segs.size() == 1);
    }
}

TEST_CASE("entering once and leaving for good yields no arms") {
    Walk w = straight_walk({20, 0}, {{kMinusX, 40}});
    CHECK(!extract_four_arms(w, {0, 0}, 6.5, 12.5, 2.5).has_value());
}

TEST_CASE("bad disk event: disjoint parallel arms are bad") {
    FourArms fa;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) fa.arms[i].push_back({j, 3 * i});
    CHECK(bad_disk_event(fa));
}

TEST_CASE("bad disk event: arms sharing a vertex are never bad") {
    FourArms fa;
    for (int i = 0; i < 4; ++i) {
        fa.arms[i].push_back({0, 0});  // shared vertex
        fa.arms[i].push_back({1, i});
    }
    CHECK(!bad_disk_event(fa));
}

TEST_CASE("bad disk event equals brute force over the 24 permutations") {
    auto brute = [](const FourArms& fa) {
        int idx[4] = {0, 1, 2, 3};
        std::sort(idx, idx + 4);
        do {
            bool hit = false;
            for (const auto& v : fa.arms[idx[0]]) {
                for (const auto& u : fa.arms[idx[1]])
                    if (u == v) hit = true;
                for (const auto& u : fa.arms[idx[2]])
                    if (u == v) hit = true;
            }
            for (const auto& v : fa.arms[idx[3]]) {
                for (const auto& u : fa.arms[idx[1]])
                    if (u == v) hit = true;
                for (const auto& u : fa.arms[idx[2]])
                    if (u == v) hit = true;
            }
            if (!hit) return true;
        } while (std::next_permutation(idx, idx + 4));
        return false;
    };
    for (uint64_t rep = 0; rep < 60; ++rep) {
        Rng rng = make_rng(405, rep);
        FourArms fa;
        for (int i = 0; i < 4; ++i) {
            Vec2i v{int32_t(rng.below(6)), int32_t(rng.below(6))};
            fa.arms[i].push_back(v);
            for (int s = 0; s < 4; ++s) {
                v = v + dir_step(uint8_t(rng.below(4)));
                fa.arms[i].push_back(v);
            }
        }
        CHECK(bad_disk_event(fa) == brute(fa));
    }
}

TEST_CASE("default core radius keeps the core below the inner circle") {
    // mid^{4/5} < mid for every mid >= 2; degenerate inputs get clamped.
    Walk w = straight_walk({40, 0}, {{kMinusX, 80}});
    CHECK(!extract_four_arms(w, {0, 0}, 8.0, 32.0).has_value());  // leaves for good
    CHECK_THROWS_AS((void)extract_four_arms(w, {0, 0}, 32.0, 8.0), std::invalid_argument);
}
