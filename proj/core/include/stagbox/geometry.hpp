#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace stagbox {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr double operator[](int k) const { return k == 0 ? x : y; }
    constexpr double& operator[](int k) { return k == 0 ? x : y; }

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec2& v)
    {
        return os << '(' << v.x << ", " << v.y << ')';
    }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
constexpr Vec2 unit_axis(int k) { return k == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }
//! Rotates by -90 degrees, i.e. the right-hand normal of a direction vector.
constexpr Vec2 right_normal(const Vec2& d) { return {d.y, -d.x}; }

//! Dense 2x2 matrix, row-major.
struct Mat2 {
    double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 scalar(double s) { return {s, 0.0, 0.0, s}; }

    constexpr Vec2 operator*(const Vec2& v) const { return {xx * v.x + xy * v.y, yx * v.x + yy * v.y}; }
    constexpr Mat2 operator*(double s) const { return {xx * s, xy * s, yx * s, yy * s}; }
    constexpr double det() const { return xx * yy - xy * yx; }
    constexpr double trace() const { return xx + yy; }
    constexpr bool is_symmetric(double tol = 1e-14) const
    {
        const double d = xy - yx;
        return (d < 0 ? -d : d) <= tol * (1.0 + (xx < 0 ? -xx : xx) + (yy < 0 ? -yy : yy));
    }
    //! Symmetric positive definite test via Sylvester's criterion.
    constexpr bool is_spd() const { return is_symmetric() && xx > 0.0 && det() > 0.0; }
    constexpr bool is_isotropic() const { return xy == 0.0 && yx == 0.0 && xx == yy; }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

//! Axis aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

    constexpr double width() const { return x1 - x0; }
    constexpr double height() const { return y1 - y0; }
    constexpr double area() const { return width() * height(); }
    constexpr double lo(int k) const { return k == 0 ? x0 : y0; }
    constexpr double hi(int k) const { return k == 0 ? x1 : y1; }
    constexpr bool contains(const Vec2& p, double tol = 0.0) const
    {
        return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
    }
    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

struct Segment {
    Vec2 a, b;

    double length() const { return norm(b - a); }
    Vec2 midpoint() const { return 0.5 * (a + b); }
    Vec2 direction() const { return (b - a) * (1.0 / length()); }
};

//! Signed area of a polygon given by its corners in order (shoelace formula).
template<class Range>
double signed_area(const Range& pts)
{
    double a = 0.0;
    const auto n = std::size(pts);
    for (std::size_t k = 0; k < n; ++k)
        a += cross(pts[k], pts[(k + 1) % n]);
    return 0.5 * a;
}

} // namespace stagbox
