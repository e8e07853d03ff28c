#ifndef KTS_VEC2_HPP
#define KTS_VEC2_HPP

#include <algorithm>
#include <cmath>
#include <optional>

namespace kts {

// Plain 2-vector used for coefficients, points and directions.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    constexpr Vec2& operator/=(double s) { x /= s; y /= s; return *this; }

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return a /= s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
// Rotation by +90 degrees.
constexpr Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

inline double inf_norm(double v) { return std::abs(v); }
inline double inf_norm(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }
inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// 2x2 matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0, b = 0.0;
    double c = 0.0, d = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    // Matrix whose columns are the two given vectors.
    static constexpr Mat2 from_columns(const Vec2& c0, const Vec2& c1)
    {
        return {c0.x, c1.x, c0.y, c1.y};
    }

    constexpr double det() const { return a * d - b * c; }
    constexpr Vec2 row(int i) const { return i == 0 ? Vec2{a, b} : Vec2{c, d}; }
    double max_abs() const
    {
        return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    }
    // Induced infinity norm (max absolute row sum).
    double inf_norm() const
    {
        return std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d));
    }

    std::optional<Mat2> inverse() const
    {
        const double dt = det();
        if (dt == 0.0 || !std::isfinite(dt)) {
            return std::nullopt;
        }
        return Mat2{d / dt, -b / dt, -c / dt, a / dt};
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Vec2 operator*(const Mat2& m, const Vec2& v)
{
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

constexpr Mat2 operator*(const Mat2& l, const Mat2& r)
{
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

} // namespace kts

#endif // KTS_VEC2_HPP
