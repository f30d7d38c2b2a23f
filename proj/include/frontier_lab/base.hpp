#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flab {

struct Vec2i {
    int32_t x = 0;
    int32_t y = 0;
    friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
    friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
    int64_t norm2() const { return int64_t(x) * x + int64_t(y) * y; }
    double norm() const { return std::sqrt(double(norm2())); }
};

struct Vec2d {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2d& a, const Vec2d& b) { return a.x == b.x && a.y == b.y; }
    friend Vec2d operator+(const Vec2d& a, const Vec2d& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2d operator-(const Vec2d& a, const Vec2d& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2d operator*(double s, const Vec2d& a) { return {s * a.x, s * a.y}; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2d to_vec2d(Vec2i v) { return {double(v.x), double(v.y)}; }

inline double dist(const Vec2d& a, const Vec2d& b) { return (a - b).norm(); }

// Step directions, also the 2-bit codes of the walk file format.
enum Dir : uint8_t { kPlusX = 0, kMinusX = 1, kPlusY = 2, kMinusY = 3 };

inline Vec2i dir_step(uint8_t d) {
    static constexpr std::array<Vec2i, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    return kSteps[d];
}

inline uint8_t dir_reverse(uint8_t d) { return d ^ 1u; }

// Closed integer rectangle of lattice vertices, [x0,x1] x [y0,y1].
struct Rect {
    int32_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int32_t width() const { return x1 - x0 + 1; }
    int32_t height() const { return y1 - y0 + 1; }
    bool contains(Vec2i v) const { return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1; }
    friend bool operator==(const Rect& a, const Rect& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

// n <-> ln R mapping for the dyadic lattice convention.  Scale index k means
// exit radius R = 2^k, i.e. the paper-style log-radius is n = k ln 2.
inline double log_radius(int64_t radius) { return std::log(double(radius)); }
inline int64_t dyadic_radius(int scale_index) { return int64_t(1) << scale_index; }

}  // namespace flab
