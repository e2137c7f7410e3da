#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace frontlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xx, double yy) : x(xx), y(yy) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::sqrt(dot(v, v)); }
inline Vec2 hat(const Vec2& v) {
    double n = norm(v);
    return n > 0 ? v / n : Vec2{0, 0};
}
// counter-clockwise quarter turn
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

namespace kernels {

enum class Exec { serial, parallel };

Exec execution();
void set_execution(Exec mode);

// Parallel index loop over [0, n). The parallel path and the serial
// reference produce bit-identical results: every iteration writes
// disjoint data and reductions below use a fixed chunking.
void for_range(int n, const std::function<void(int)>& body);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double max_abs(const std::vector<double>& a);
double min_value(const std::vector<double>& a);
double max_value(const std::vector<double>& a);
// y += s*x
void axpy(double s, const std::vector<double>& x, std::vector<double>& y);

}  // namespace kernels

}  // namespace frontlab
