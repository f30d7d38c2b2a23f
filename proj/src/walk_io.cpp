#include "frontier_lab/walk_io.hpp"

#include <cstring>
#include <fstream>

namespace flab {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(uint8_t(v & 0xff));
    out.push_back(uint8_t(v >> 8));
}
void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

uint16_t get_u16(const std::vector<uint8_t>& b, size_t off) {
    return uint16_t(b[off]) | uint16_t(b[off + 1]) << 8;
}
uint32_t get_u32(const std::vector<uint8_t>& b, size_t off) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(b[off + i]) << (8 * i);
    return v;
}
uint64_t get_u64(const std::vector<uint8_t>& b, size_t off) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[off + i]) << (8 * i);
    return v;
}

}  // namespace

std::vector<uint8_t> encode_walk(const Walk& walk) {
    std::vector<uint8_t> out;
    out.reserve(kWalkHeaderBytes + (walk.steps.size() + 3) / 4);
    for (char c : {'F', 'R', 'W', 'K'}) out.push_back(uint8_t(c));
    put_u16(out, kWalkFileVersion);
    put_u16(out, walk.scale_index);
    put_u32(out, uint32_t(walk.start.x));
    put_u32(out, uint32_t(walk.start.y));
    put_u64(out, walk.steps.size());
    uint8_t acc = 0;
    int filled = 0;
    for (uint8_t s : walk.steps) {
        acc |= uint8_t((s & 3u) << (2 * filled));
        if (++filled == 4) {
            out.push_back(acc);
            acc = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(acc);
    return out;
}

Walk decode_walk(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < kWalkHeaderBytes) throw WalkDecodeError("truncated header", bytes.size());
    if (std::memcmp(bytes.data(), "FRWK", 4) != 0) throw WalkDecodeError("bad magic", 0);
    uint16_t version = get_u16(bytes, 4);
    if (version != kWalkFileVersion) throw WalkDecodeError("unsupported version", 4);
    Walk w;
    w.scale_index = get_u16(bytes, 6);
    w.start.x = int32_t(get_u32(bytes, 8));
    w.start.y = int32_t(get_u32(bytes, 12));
    uint64_t count = get_u64(bytes, 16);
    size_t expect = kWalkHeaderBytes + size_t((count + 3) / 4);
    if (bytes.size() != expect)
        throw WalkDecodeError("length mismatch: expected " + std::to_string(expect) + " bytes",
                              bytes.size() < expect ? bytes.size() : expect);
    w.steps.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        uint8_t byte = bytes[kWalkHeaderBytes + size_t(i / 4)];
        w.steps.push_back(uint8_t((byte >> (2 * (i % 4))) & 3u));
    }
    return w;
}

void write_walk_file(const std::string& path, const Walk& walk) {
    auto bytes = encode_walk(walk);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

Walk read_walk_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    return decode_walk(bytes);
}

}  // namespace flab
