#pragma once

#include <cstdint>

#include "frontier_lab/base.hpp"

namespace flab {

// Counter-keyed xoshiro256++ stream.  Identical (seed, stream) pairs produce
// identical output on every host; distinct streams are decorrelated through a
// splitmix64 key schedule.  All distributions are implemented here so results
// do not depend on any library's unspecified algorithms.
class Rng {
  public:
    Rng() : Rng(0, 0) {}
    Rng(uint64_t seed, uint64_t stream);

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

    uint64_t next_u64();

    // Uniform on [0,1) with 53-bit resolution.
    double u01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform over {0,...,n-1} (unbiased rejection sampling).
    uint64_t below(uint64_t n);

    // Standard normal via ziggurat (Box-Muller fallback in the tail layer).
    double gaussian();

    // Refills a buffer of 32 lattice directions from one 64-bit draw.
    // Hot path of walk sampling.
    uint8_t direction() {
        if (dir_left_ == 0) {
            dir_bits_ = next_u64();
            dir_left_ = 32;
        }
        uint8_t d = uint8_t(dir_bits_ & 3u);
        dir_bits_ >>= 2;
        --dir_left_;
        return d;
    }

    bool coin() { return (next_u64() >> 63) != 0; }

  private:
    uint64_t s_[4];
    uint64_t seed_ = 0, stream_ = 0;
    uint64_t dir_bits_ = 0;
    int dir_left_ = 0;
};

inline Rng make_rng(uint64_t seed, uint64_t stream) { return Rng(seed, stream); }

// Fixed mixing function combining a base seed with a sample index, so that
// parallel and serial runs consume identical per-sample streams.
uint64_t mix_stream(uint64_t scale_tag, uint64_t sample_index);

uint64_t splitmix64(uint64_t& state);

}  // namespace flab
