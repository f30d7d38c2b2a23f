#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frontier_lab/walk.hpp"

namespace flab {

// Binary walk format "FRWK":
//   offset 0: magic "FRWK" (4 bytes)
//   offset 4: version u16 (little endian)
//   offset 6: scale_index u16
//   offset 8: start x i32, offset 12: start y i32
//   offset 16: step_count u64
//   offset 24: steps, 2 bits each packed low bits first within each byte
//              ({00:+x, 01:-x, 10:+y, 11:-y}), zero-padded final byte.
// File length is 24 + ceil(step_count / 4) bytes.
inline constexpr uint16_t kWalkFileVersion = 1;
inline constexpr size_t kWalkHeaderBytes = 24;

std::vector<uint8_t> encode_walk(const Walk& walk);

struct WalkDecodeError : std::runtime_error {
    size_t offset;
    WalkDecodeError(const std::string& what, size_t off)
        : std::runtime_error(what + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

Walk decode_walk(const std::vector<uint8_t>& bytes);

void write_walk_file(const std::string& path, const Walk& walk);
Walk read_walk_file(const std::string& path);

}  // namespace flab
