#include "stagbox/manufactured.hpp"

#include "stagbox/errors.hpp"

#include <cmath>

namespace stagbox {

namespace {

const double e2 = std::exp(2.0);

} // namespace

Vec2 ManufacturedCase::v_ff(const Vec2& p) const
{
    return {p.y, -p.y * std::sin(omega * p.x)};
}

double ManufacturedCase::p_ff(const Vec2& p) const
{
    const double s = std::sin(omega * p.x);
    return -p.y * p.y * s * s;
}

Vec2 ManufacturedCase::v_pm(const Vec2& p) const
{
    const double s = std::sin(omega * p.x), co = std::cos(omega * p.x);
    const double ey = std::exp(p.y + 1.0);
    return {c / (2.0 * omega) * ey * s * s - omega * (ey + 2.0 - e2) * co,
            (0.5 * c * co * (ey + 2.0 - e2) - (1.0 + c * co) * std::exp(p.y - 1.0)) * s};
}

double ManufacturedCase::p_pm(const Vec2& p) const
{
    return (std::exp(p.y + 1.0) + 2.0 - e2) * std::sin(omega * p.x);
}

double ManufacturedCase::q_ff(const Vec2& p) const
{
    return -std::sin(omega * p.x);
}

Vec2 ManufacturedCase::f(const Vec2& p) const
{
    const double s = std::sin(omega * p.x), co = std::cos(omega * p.x);
    const double y = p.y;
    return {-2.0 * omega * y * y * s * co - 2.0 * y * s + omega * co, -omega * y * y * co - omega * omega * y * s};
}

double ManufacturedCase::q_pm(const Vec2& p) const
{
    const double s = std::sin(omega * p.x), co = std::cos(omega * p.x);
    const double ey = std::exp(p.y + 1.0);
    return (1.5 * c * ey * co + omega * omega * (ey + 2.0 - e2) - (1.0 + c * co) * std::exp(p.y - 1.0)) * s;
}

Mat2 ManufacturedCase::K(const Vec2& p) const
{
    const double off = -c / (2.0 * omega) * std::sin(omega * p.x);
    return {1.0, off, off, std::exp(-2.0) * (1.0 + c * std::cos(omega * p.x))};
}

Mat2 ManufacturedCase::grad_v_ff(const Vec2& p) const
{
    const double s = std::sin(omega * p.x), co = std::cos(omega * p.x);
    return {0.0, 1.0, -p.y * omega * co, -s};
}

Vec2 ManufacturedCase::grad_p_pm(const Vec2& p) const
{
    const double ey = std::exp(p.y + 1.0);
    return {(ey + 2.0 - e2) * omega * std::cos(omega * p.x), ey * std::sin(omega * p.x)};
}

double ManufacturedCase::ff_normal_stress(const Vec2& p, int d) const
{
    const Mat2 G = grad_v_ff(p);
    const double dvd = d == 0 ? G.xx : G.yy;
    return p_ff(p) - 2.0 * mu * dvd;
}

double ManufacturedCase::slip_source(const Vec2& p) const
{
    const Mat2 G = grad_v_ff(p);
    const double shear = G.xy + G.yx; // (grad v + grad v^T)_xy
    const double beta = alpha / std::sqrt(K(p).xx);
    // n = (0,-1), t = (1,0)
    return shear - beta * v_ff(p).x;
}

std::vector<double> eval_exact(const ManufacturedCase& mc, const std::string& field, const Vec2& p)
{
    auto vec = [](const Vec2& v) { return std::vector<double>{v.x, v.y}; };
    if (field == "v_ff") return vec(mc.v_ff(p));
    if (field == "p_ff") return {mc.p_ff(p)};
    if (field == "v_pm") return vec(mc.v_pm(p));
    if (field == "p_pm") return {mc.p_pm(p)};
    if (field == "q_ff") return {mc.q_ff(p)};
    if (field == "f") return vec(mc.f(p));
    if (field == "q_pm") return {mc.q_pm(p)};
    if (field == "K") {
        const Mat2 K = mc.K(p);
        return {K.xx, K.xy, K.yx, K.yy};
    }
    throw InvalidInput("unknown exact field '" + field + "'");
}

} // namespace stagbox
