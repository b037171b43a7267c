#include "stagbox/interface.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace stagbox {

std::vector<Overlap> overlap_intervals(std::vector<Interval> first, std::vector<Interval> second, double tol)
{
    auto by_lo = [](const Interval& l, const Interval& r) { return l.lo < r.lo; };
    std::sort(first.begin(), first.end(), by_lo);
    std::sort(second.begin(), second.end(), by_lo);
    std::vector<Overlap> out;
    std::size_t i = 0, j = 0;
    while (i < first.size() && j < second.size()) {
        const double lo = std::max(first[i].lo, second[j].lo);
        const double hi = std::min(first[i].hi, second[j].hi);
        if (hi - lo > tol)
            out.push_back({lo, hi, first[i].id, second[j].id});
        if (first[i].hi < second[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

namespace {

struct Param {
    bool on = false;
    double t0 = 0.0, t1 = 0.0;
};

//! Parameter range of segment pq along s, if pq lies on s.
Param parametrize(const Segment& s, const Vec2& p, const Vec2& q, double tol)
{
    const Vec2 dir = s.direction();
    const double len = s.length();
    const Vec2 nrm = right_normal(dir);
    if (std::abs(dot(p - s.a, nrm)) > tol || std::abs(dot(q - s.a, nrm)) > tol)
        return {};
    double t0 = dot(p - s.a, dir), t1 = dot(q - s.a, dir);
    if (t0 > t1)
        std::swap(t0, t1);
    if (t0 < -tol || t1 > len + tol)
        return {};
    return {true, std::clamp(t0, 0.0, len), std::clamp(t1, 0.0, len)};
}

} // namespace

std::vector<InterfaceFacet> intersect_interface(const StaggeredGrid& ff, const DualTopology& pm,
                                                const std::vector<Segment>& segments, const std::string& marker)
{
    double total = 0.0;
    for (const auto& s : segments)
        total += s.length();
    if (segments.empty() || !(total > 0.0))
        throw ConfigurationError("interface has no segments of positive length");
    const double tol = 1e-10 * total;

    std::vector<std::vector<Interval>> ff_iv(segments.size()), pm_iv(segments.size());
    for (int f : ff.faces_with_marker(marker)) {
        const Vec2 c = ff.face_center(f);
        const Vec2 t = unit_axis(1 - ff.face_index(f).d) * (0.5 * ff.face_measure(f));
        bool placed = false;
        for (std::size_t k = 0; k < segments.size() && !placed; ++k) {
            const Param p = parametrize(segments[k], c - t, c + t, tol);
            if (p.on) {
                ff_iv[k].push_back({p.t0, p.t1, f});
                placed = true;
            }
        }
        if (!placed)
            throw GeometryError(fmt::format("free-flow coupling face {} at ({}, {}) is not on the interface", f,
                                            c.x, c.y));
    }
    const auto& bfaces = pm.boundary_subfaces();
    for (int k = 0; k < static_cast<int>(bfaces.size()); ++k) {
        const auto& bf = bfaces[k];
        if (bf.marker != marker)
            continue;
        bool placed = false;
        for (std::size_t s = 0; s < segments.size() && !placed; ++s) {
            const Param p = parametrize(segments[s], bf.a, bf.b, tol);
            if (p.on) {
                pm_iv[s].push_back({p.t0, p.t1, k});
                placed = true;
            }
        }
        if (!placed)
            throw GeometryError(fmt::format("porous coupling sub-face of vertex {} at ({}, {}) is not on the interface",
                                            bf.vertex, bf.a.x, bf.a.y));
    }

    std::vector<InterfaceFacet> facets;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const Vec2 dir = segments[s].direction();
        for (const auto& o : overlap_intervals(ff_iv[s], pm_iv[s], tol)) {
            InterfaceFacet g;
            g.a = segments[s].a + o.lo * dir;
            g.b = segments[s].a + o.hi * dir;
            g.measure = o.hi - o.lo;
            g.ff_face = o.first;
            g.pm_subface = o.second;
            g.pm_vertex = bfaces[o.second].vertex;
            g.pm_element = bfaces[o.second].element;
            g.segment = static_cast<int>(s);
            facets.push_back(g);
        }
    }
    if (facets.empty())
        throw ConfigurationError("free-flow and porous coupling faces do not overlap");
    return facets;
}

} // namespace stagbox
