#include "stagbox/grid_generators.hpp"

#include "stagbox/errors.hpp"

#include <cmath>

namespace stagbox {

std::string to_string(PmGridKind kind)
{
    switch (kind) {
    case PmGridKind::conforming: return "conforming";
    case PmGridKind::box_conforming: return "box_conforming";
    case PmGridKind::simplex: return "simplex";
    }
    return "unknown";
}

PmGridKind parse_pm_grid_kind(const std::string& name)
{
    if (name == "conforming") return PmGridKind::conforming;
    if (name == "box_conforming" || name == "box-conforming") return PmGridKind::box_conforming;
    if (name == "simplex") return PmGridKind::simplex;
    throw InvalidInput("unknown porous grid kind '" + name + "'");
}

namespace {

int cells_for(double length, double h)
{
    const double r = length / h;
    const int n = static_cast<int>(std::lround(r));
    if (n < 1 || std::abs(r - n) > 1e-8 * r)
        throw InvalidInput("porous domain length is not a multiple of the free-flow spacing");
    return n;
}

} // namespace

std::vector<double> pm_distribution(PmGridKind kind, double lo, double hi, double h, double f,
                                    bool interface_parallel)
{
    if (!(f > 0.0) || f > 1.0)
        throw InvalidInput("interface factor must lie in (0, 1]");
    if (f < 1.0 && kind != PmGridKind::simplex)
        throw InvalidInput("interface factors below 1 need the simplex grid kind");
    const double L = hi - lo;
    const int n = cells_for(L, h);
    std::vector<double> x;
    if (kind == PmGridKind::conforming || !interface_parallel) {
        for (int k = 0; k <= n; ++k)
            x.push_back(lo + L * k / n);
        return x;
    }
    const int inner = kind == PmGridKind::box_conforming
                          ? n - 1
                          : (n == 1 ? 0 : std::max(1, static_cast<int>(std::lround((L / h - 1.0) / f))));
    x.push_back(lo);
    if (inner == 0) {
        x.push_back(hi);
        return x;
    }
    const double a = lo + 0.5 * h, b = hi - 0.5 * h;
    for (int k = 0; k <= inner; ++k)
        x.push_back(k == inner ? b : a + (b - a) * k / inner);
    x.push_back(hi);
    return x;
}

BoxMesh generate_pm_grid(const PmGridSpec& spec)
{
    const Rect& D = spec.domain;
    if (!(D.width() > 0.0) || !(D.height() > 0.0) || !(spec.hx > 0.0) || !(spec.hy > 0.0))
        throw InvalidInput("porous grid needs positive extents and spacings");
    const auto xs = pm_distribution(spec.kind, D.x0, D.x1, spec.hx, spec.interface_factor, spec.interface_along_x);
    const auto ys = pm_distribution(spec.kind, D.y0, D.y1, spec.hy, spec.interface_factor, spec.interface_along_y);
    const int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1;
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.push_back({xs[i], ys[j]});
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<BoxElement> elems;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if (spec.kind == PmGridKind::simplex) {
                BoxElement t1, t2;
                t1.num_corners = t2.num_corners = 3;
                t1.v = {a, b, c, -1};
                t2.v = {a, c, d, -1};
                elems.push_back(t1);
                elems.push_back(t2);
            }
            else {
                BoxElement q;
                q.num_corners = 4;
                q.v = {a, b, c, d};
                elems.push_back(q);
            }
        }
    BoxMesh mesh(std::move(verts), std::move(elems));
    mesh.assign_markers([&](const Vec2& m, const Vec2& n) { return default_pm_marker(D, m, n); });
    return mesh;
}

std::string default_pm_marker(const Rect& domain, const Vec2& m, const Vec2& n)
{
    const double tol = 1e-10 * std::max(domain.width(), domain.height());
    if (n.x < -0.5 && std::abs(m.x - domain.x0) < tol) return "left";
    if (n.x > 0.5 && std::abs(m.x - domain.x1) < tol) return "right";
    if (n.y < -0.5 && std::abs(m.y - domain.y0) < tol) return "bottom";
    if (n.y > 0.5 && std::abs(m.y - domain.y1) < tol) return "top";
    return "inner";
}

} // namespace stagbox
