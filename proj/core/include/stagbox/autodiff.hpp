#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace stagbox {

//! Forward-mode dual number carrying a single directional derivative.
struct Dual {
    double v = 0.0;
    double d = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}
    constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

    constexpr Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    constexpr Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    constexpr Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    constexpr Dual& operator/=(const Dual& o)
    {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }

    friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

    friend Dual sqrt(const Dual& a)
    {
        const double s = std::sqrt(a.v);
        return {s, s > 0.0 ? 0.5 * a.d / s : 0.0};
    }
    friend Dual abs(const Dual& a) { return a.v < 0.0 ? -a : a; }
    friend Dual exp(const Dual& a)
    {
        const double e = std::exp(a.v);
        return {e, e * a.d};
    }
};

//! Scalar that records which unknowns a value depends on. Used once to
//! discover the Jacobian sparsity pattern.
struct Tracer {
    double v = 0.0;
    std::vector<int> deps;

    Tracer() = default;
    Tracer(double value) : v(value) {}
    Tracer(double value, int dof) : v(value), deps{dof} {}

    Tracer& merge(const Tracer& o)
    {
        if (o.deps.empty())
            return *this;
        if (deps.empty()) {
            deps = o.deps;
            return *this;
        }
        std::vector<int> out;
        out.reserve(deps.size() + o.deps.size());
        std::set_union(deps.begin(), deps.end(), o.deps.begin(), o.deps.end(), std::back_inserter(out));
        deps.swap(out);
        return *this;
    }

    Tracer& operator+=(const Tracer& o) { v += o.v; return merge(o); }
    Tracer& operator-=(const Tracer& o) { v -= o.v; return merge(o); }
    Tracer& operator*=(const Tracer& o) { v *= o.v; return merge(o); }
    Tracer& operator/=(const Tracer& o) { v /= o.v; return merge(o); }

    friend Tracer operator+(Tracer a, const Tracer& b) { return a += b; }
    friend Tracer operator-(Tracer a, const Tracer& b) { return a -= b; }
    friend Tracer operator*(Tracer a, const Tracer& b) { return a *= b; }
    friend Tracer operator/(Tracer a, const Tracer& b) { return a /= b; }
    friend Tracer operator-(Tracer a) { a.v = -a.v; return a; }

    friend Tracer sqrt(Tracer a) { a.v = std::sqrt(a.v); return a; }
    friend Tracer abs(Tracer a) { a.v = std::abs(a.v); return a; }
    friend Tracer exp(Tracer a) { a.v = std::exp(a.v); return a; }
};

inline double value(double a) { return a; }
inline double value(const Dual& a) { return a.v; }
inline double value(const Tracer& a) { return a.v; }

using std::abs;
using std::exp;
using std::sqrt;

//! Upwind-weighted value zeta*up + (1-zeta)*down, with the upstream side
//! chosen by the sign of the transporting flux. Both values always enter the
//! expression so that the dependency pattern does not change with the flow
//! direction.
template<class T>
T upwind(double flux, const T& inside, const T& outside, double zeta)
{
    const bool inside_up = flux >= 0.0;
    const T& up = inside_up ? inside : outside;
    const T& down = inside_up ? outside : inside;
    return zeta * up + (1.0 - zeta) * down;
}

} // namespace stagbox
