#include "frontier_lab/rng.hpp"

#include <cmath>

namespace flab {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t mix_stream(uint64_t scale_tag, uint64_t sample_index) {
    uint64_t st = scale_tag * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull;
    return splitmix64(st) ^ sample_index;
}

Rng::Rng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
    uint64_t k = seed;
    // Fold the stream id in before expanding the state so streams differ in
    // every word, not just by an additive counter.
    uint64_t sm = stream + 0x9E3779B97F4A7C15ull;
    k ^= splitmix64(sm);
    for (auto& w : s_) w = splitmix64(k);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x7F4A7C15ull;
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t Rng::next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t threshold = (0 - n) % n;
    for (;;) {
        uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

// Marsaglia-Tsang ziggurat (128 layers), widened to 64-bit draws.
namespace {

constexpr double kZigR = 3.442619855899;

struct ZigguratTables {
    uint64_t kn[128];
    double wn[128];
    double fn[128];
    ZigguratTables() {
        const double m1 = 9223372036854775808.0;  // 2^63
        double dn = kZigR, tn = kZigR;
        const double vn = 9.91256303526217e-3;
        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = uint64_t((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = uint64_t((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

const ZigguratTables& zig() {
    static const ZigguratTables t;
    return t;
}

}  // namespace

double Rng::gaussian() {
    const auto& t = zig();
    for (;;) {
        int64_t hz = int64_t(next_u64());
        int iz = int(hz & 127);
        uint64_t mag = hz < 0 ? (0 - uint64_t(hz)) : uint64_t(hz);
        if (mag < t.kn[iz]) return double(hz) * t.wn[iz];
        if (iz == 0) {
            // Exact tail sample beyond +-r.
            double x, y;
            do {
                x = -std::log(1.0 - u01()) / kZigR;
                y = -std::log(1.0 - u01());
            } while (y + y < x * x);
            return hz > 0 ? (kZigR + x) : -(kZigR + x);
        }
        double x = double(hz) * t.wn[iz];
        if (t.fn[iz] + u01() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x)) return x;
    }
}

}  // namespace flab
