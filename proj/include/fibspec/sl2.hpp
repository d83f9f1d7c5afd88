#pragma once

#include <cmath>

namespace fibspec {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const noexcept { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }

/// Real 2x2 matrix with unit determinant. Transfer matrices use the layout
///   [ v'(b)  u'(b) ]
///   [ v(b)   u(b)  ]
/// i.e. they act on column vectors (y', y).
struct SL2Matrix {
    double a11 = 1.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 1.0;

    static constexpr SL2Matrix identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

    double trace() const noexcept { return a11 + a22; }

    /// a11 a22 - a12 a21 via Kahan's fma scheme (accurate to a few ulps of the
    /// determinant of the stored entries).
    double det() const noexcept {
        const double w = a12 * a21;
        const double e = std::fma(-a12, a21, w);
        const double f = std::fma(a11, a22, -w);
        return f + e;
    }

    /// Inverse assuming det = 1.
    SL2Matrix inverse() const noexcept { return {a22, -a12, -a21, a11}; }

    double max_abs() const noexcept {
        return std::fmax(std::fmax(std::abs(a11), std::abs(a12)), std::fmax(std::abs(a21), std::abs(a22)));
    }

    /// Largest singular value, closed form without forming m^T m.
    double norm() const noexcept {
        const double q = std::hypot(a11 + a22, a12 - a21);
        const double r = std::hypot(a11 - a22, a12 + a21);
        return 0.5 * (q + r);
    }

    Vec2 apply(Vec2 v) const noexcept { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    SL2Matrix scaled(double s) const noexcept { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

    friend SL2Matrix operator*(const SL2Matrix& l, const SL2Matrix& r) noexcept {
        return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
                l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
    }
    friend SL2Matrix operator+(const SL2Matrix& l, const SL2Matrix& r) noexcept {
        return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
    }
    friend SL2Matrix operator-(const SL2Matrix& l, const SL2Matrix& r) noexcept {
        return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
    }
};

/// max |l_ij - r_ij|
inline double max_abs_diff(const SL2Matrix& l, const SL2Matrix& r) noexcept { return (l - r).max_abs(); }

} // namespace fibspec
