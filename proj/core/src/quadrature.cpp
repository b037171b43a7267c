#include "stagbox/quadrature.hpp"

#include "stagbox/errors.hpp"

#include <cmath>

namespace stagbox {

std::string to_string(QuadratureKind kind)
{
    return kind == QuadratureKind::midpoint ? "midpoint" : "fifth_order";
}

QuadratureKind parse_quadrature_kind(const std::string& name)
{
    if (name == "midpoint" || name == "centroid") return QuadratureKind::midpoint;
    if (name == "fifth_order" || name == "gauss") return QuadratureKind::fifth_order;
    throw InvalidInput("unknown quadrature '" + name + "'");
}

namespace {

const std::array<double, 3> gauss_x{-0.7745966692414834, 0.0, 0.7745966692414834};
const std::array<double, 3> gauss_w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

template<class F, class R>
R rect_rule(const F& f, const Rect& r, QuadratureKind kind, R zero)
{
    const double hx = 0.5 * r.width(), hy = 0.5 * r.height();
    const Vec2 c{r.x0 + hx, r.y0 + hy};
    if (kind == QuadratureKind::midpoint)
        return f(c) * r.area();
    R sum = zero;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            sum += f(Vec2{c.x + hx * gauss_x[i], c.y + hy * gauss_x[j]}) * (gauss_w[i] * gauss_w[j]);
    return sum * (hx * hy);
}

// Degree 5 rule (Radon): barycentric points and weights summing to one.
struct TriPoint {
    double l1, l2, w;
};

std::array<TriPoint, 7> radon_rule()
{
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0, b1 = (9.0 + 2.0 * s) / 21.0;
    const double a2 = (6.0 + s) / 21.0, b2 = (9.0 - 2.0 * s) / 21.0;
    const double w1 = (155.0 - s) / 1200.0, w2 = (155.0 + s) / 1200.0;
    return {{{1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
             {a1, a1, w1}, {a1, b1, w1}, {b1, a1, w1},
             {a2, a2, w2}, {a2, b2, w2}, {b2, a2, w2}}};
}

} // namespace

double integrate_rect(const ScalarField& f, const Rect& r, QuadratureKind kind)
{
    return rect_rule(f, r, kind, 0.0);
}

Vec2 integrate_rect(const VectorField& f, const Rect& r, QuadratureKind kind)
{
    return rect_rule(f, r, kind, Vec2{});
}

double integrate_triangle(const ScalarField& f, const Vec2& a, const Vec2& b, const Vec2& c, QuadratureKind kind)
{
    const double area = 0.5 * cross(b - a, c - a);
    if (kind == QuadratureKind::midpoint)
        return f((a + b + c) * (1.0 / 3.0)) * area;
    static const auto rule = radon_rule();
    double sum = 0.0;
    for (const auto& p : rule)
        sum += p.w * f(a + p.l1 * (b - a) + p.l2 * (c - a));
    return sum * area;
}

double integrate_polygon(const ScalarField& f, std::span<const Vec2> corners, QuadratureKind kind)
{
    if (kind == QuadratureKind::midpoint) {
        // centroid rule
        double area = 0.0;
        Vec2 cen;
        for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
            const double a = 0.5 * cross(corners[k] - corners[0], corners[k + 1] - corners[0]);
            area += a;
            cen += (corners[0] + corners[k] + corners[k + 1]) * (a / 3.0);
        }
        return f(cen * (1.0 / area)) * area;
    }
    double sum = 0.0;
    for (std::size_t k = 1; k + 1 < corners.size(); ++k)
        sum += integrate_triangle(f, corners[0], corners[k], corners[k + 1], kind);
    return sum;
}

} // namespace stagbox
