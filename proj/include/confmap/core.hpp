#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace confmap {

using Complex = std::complex<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    explicit Vec2(const Complex& z) : x(z.real()), y(z.imag()) {}

    Complex cplx() const { return {x, y}; }

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // z-component of the cross product, useful for orientation tests
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
    // rotate by +90 degrees
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct BBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool empty = true;

    void absorb(const Vec2& p) {
        if (empty) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            empty = false;
        } else {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    void pad(double d) { xmin -= d; xmax += d; ymin -= d; ymax += d; }
    double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
    bool contains(const Vec2& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

// Error taxonomy. GeometryError covers bad problem definitions and meshes built
// from them (CLI exit code 2); SolveError and TraceError cover numerical
// failures during solving or tracing (exit code 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GeometryError : Error {
    using Error::Error;
};
struct SolveError : Error {
    using Error::Error;
};
struct TraceError : Error {
    using Error::Error;
};

inline constexpr double PI = 3.14159265358979323846;

} // namespace confmap
