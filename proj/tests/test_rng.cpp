#include <doctest.h>

#include "frontier_lab/rng.hpp"
#include "frontier_lab/stats.hpp"

using namespace flab;

TEST_CASE("identical seed and stream reproduce the byte stream") {
    Rng a = make_rng(42, 0), b = make_rng(42, 0);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct seeds and streams give distinct sequences") {
    Rng a = make_rng(42, 0), b = make_rng(43, 0), c = make_rng(42, 1);
    int diff_seed = 0, diff_stream = 0;
    for (int i = 0; i < 64; ++i) {
        uint64_t x = a.next_u64();
        if (x != b.next_u64()) ++diff_seed;
        if (x != c.next_u64()) ++diff_stream;
    }
    CHECK(diff_seed > 60);
    CHECK(diff_stream > 60);
}

TEST_CASE("parallel streams pass a pairwise independence chi-square at p=0.001") {
    Rng a = make_rng(42, 0), b = make_rng(42, 1);
    std::vector<uint64_t> cells(256, 0);
    for (int i = 0; i < 10000; ++i) {
        uint64_t x = a.next_u64() & 15u;
        uint64_t y = b.next_u64() & 15u;
        cells[x * 16 + y]++;
    }
    CHECK(chi2_uniform_stat(cells) < chi2_quantile(255.0, 0.999));
}

TEST_CASE("direction draws are uniform over the four axes") {
    Rng rng = make_rng(7, 0);
    std::vector<uint64_t> counts(4, 0);
    for (int i = 0; i < 100000; ++i) counts[rng.direction()]++;
    CHECK(chi2_uniform_stat(counts) < chi2_quantile(3.0, 0.999));
}

TEST_CASE("gaussian moments") {
    Rng rng = make_rng(11, 3);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = rng.gaussian();
        sum += x;
        sum2 += x * x;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("u01 stays in the unit interval") {
    Rng rng = make_rng(3, 9);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("mix_stream decorrelates scale tags") {
    CHECK(mix_stream(1, 0) != mix_stream(2, 0));
    CHECK(mix_stream(1, 5) != mix_stream(1, 6));
}
