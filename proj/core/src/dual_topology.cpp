#include "stagbox/dual_topology.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace stagbox {

namespace {

constexpr double inside_tol = 1e-10;

struct QuadMap {
    std::array<Vec2, 4> p;

    Vec2 global(double xi, double eta) const
    {
        return (1 - xi) * (1 - eta) * p[0] + xi * (1 - eta) * p[1] + xi * eta * p[2] + (1 - xi) * eta * p[3];
    }
    //! Columns are d/dxi and d/deta.
    Mat2 jacobian(double xi, double eta) const
    {
        const Vec2 dxi = (1 - eta) * (p[1] - p[0]) + eta * (p[2] - p[3]);
        const Vec2 deta = (1 - xi) * (p[3] - p[0]) + xi * (p[2] - p[1]);
        return {dxi.x, deta.x, dxi.y, deta.y};
    }
};

Vec2 solve2(const Mat2& A, const Vec2& b)
{
    const double det = A.det();
    return {(A.yy * b.x - A.xy * b.y) / det, (A.xx * b.y - A.yx * b.x) / det};
}

} // namespace

Vec2 local_coordinates(const BoxMesh& mesh, int element, const Vec2& point)
{
    const auto& el = mesh.element(element);
    if (el.is_triangle()) {
        const Vec2 p0 = mesh.corner(element, 0);
        const Mat2 A{mesh.corner(element, 1).x - p0.x, mesh.corner(element, 2).x - p0.x,
                     mesh.corner(element, 1).y - p0.y, mesh.corner(element, 2).y - p0.y};
        return solve2(A, point - p0);
    }
    const QuadMap map{{mesh.corner(element, 0), mesh.corner(element, 1), mesh.corner(element, 2),
                       mesh.corner(element, 3)}};
    Vec2 xi{0.5, 0.5};
    const double scale = std::sqrt(mesh.element_area(element));
    for (int it = 0; it < 50; ++it) {
        const Vec2 r = map.global(xi.x, xi.y) - point;
        const Vec2 dxi = solve2(map.jacobian(xi.x, xi.y), r);
        xi -= dxi;
        if (norm(dxi) < 1e-15 && norm(r) < 1e-14 * scale)
            break;
    }
    return xi;
}

BasisEval eval_basis(const BoxMesh& mesh, int element, const Vec2& point)
{
    const auto& el = mesh.element(element);
    const Vec2 loc = local_coordinates(mesh, element, point);
    BasisEval out;
    out.n = el.num_corners;
    if (el.is_triangle()) {
        const double l0 = 1.0 - loc.x - loc.y;
        if (l0 < -inside_tol || loc.x < -inside_tol || loc.y < -inside_tol)
            throw DomainError(fmt::format("point ({}, {}) lies outside element {}", point.x, point.y, element));
        out.value = {l0, loc.x, loc.y, 0.0};
        const Vec2 p0 = mesh.corner(element, 0);
        const Vec2 e1 = mesh.corner(element, 1) - p0;
        const Vec2 e2 = mesh.corner(element, 2) - p0;
        const double det = cross(e1, e2);
        // gradients of the barycentric coordinates of corners 1 and 2
        const Vec2 g1{e2.y / det, -e2.x / det};
        const Vec2 g2{-e1.y / det, e1.x / det};
        out.grad = {-(g1 + g2), g1, g2, Vec2{}};
        return out;
    }
    if (loc.x < -inside_tol || loc.x > 1 + inside_tol || loc.y < -inside_tol || loc.y > 1 + inside_tol)
        throw DomainError(fmt::format("point ({}, {}) lies outside element {}", point.x, point.y, element));
    const QuadMap map{{mesh.corner(element, 0), mesh.corner(element, 1), mesh.corner(element, 2),
                       mesh.corner(element, 3)}};
    const double xi = loc.x, eta = loc.y;
    out.value = {(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
    const std::array<Vec2, 4> ref{Vec2{-(1 - eta), -(1 - xi)}, Vec2{1 - eta, -xi}, Vec2{eta, xi},
                                  Vec2{-eta, 1 - xi}};
    const Mat2 J = map.jacobian(xi, eta);
    const Mat2 JT{J.xx, J.yx, J.xy, J.yy};
    for (int k = 0; k < 4; ++k)
        out.grad[k] = solve2(JT, ref[k]);
    return out;
}

DualTopology::DualTopology(const BoxMesh& mesh) : mesh_(&mesh)
{
    cv_measure_.assign(mesh.num_vertices(), 0.0);
    scv_offset_.reserve(mesh.num_elements() + 1);
    scvf_offset_.reserve(mesh.num_elements() + 1);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double area = mesh.element_area(e);
        if (!(area > 0.0))
            throw MeshError(fmt::format("element {} is degenerate (area {})", e, area));
        scv_offset_.push_back(static_cast<int>(scvs_.size()));
        scvf_offset_.push_back(static_cast<int>(scvfs_.size()));
        const auto& el = mesh.element(e);
        const int n = el.num_corners;
        const Vec2 center = mesh.element_center(e);
        std::array<Vec2, 4> mid;
        for (int k = 0; k < n; ++k)
            mid[k] = 0.5 * (mesh.corner(e, k) + mesh.corner(e, (k + 1) % n));
        for (int k = 0; k < n; ++k) {
            SubControlVolume scv;
            scv.element = e;
            scv.local = k;
            scv.vertex = el.v[k];
            scv.corners = {mesh.corner(e, k), mid[k], center, mid[(k + n - 1) % n]};
            scv.measure = signed_area(scv.corners);
            if (!(scv.measure > 0.0))
                throw MeshError(fmt::format("element {} yields a non-positive sub-control volume", e));
            // centroid of the quadrilateral sub-control volume via its two triangles
            const auto& c = scv.corners;
            const double a1 = 0.5 * cross(c[1] - c[0], c[2] - c[0]);
            const double a2 = 0.5 * cross(c[2] - c[0], c[3] - c[0]);
            scv.centroid = ((c[0] + c[1] + c[2]) * (a1 / 3.0) + (c[0] + c[2] + c[3]) * (a2 / 3.0)) *
                           (1.0 / (a1 + a2));
            cv_measure_[scv.vertex] += scv.measure;
            scvs_.push_back(scv);
        }
        for (int k = 0; k < n; ++k) {
            const int i = k, j = (k + 1) % n;
            SubControlVolumeFace f;
            f.element = e;
            f.local = el.v[i] < el.v[j] ? std::array<int, 2>{i, j} : std::array<int, 2>{j, i};
            f.vertex = {el.v[f.local[0]], el.v[f.local[1]]};
            f.a = mid[k];
            f.b = center;
            f.ip = 0.5 * (f.a + f.b);
            f.measure = norm(f.b - f.a);
            Vec2 nrm = right_normal((f.b - f.a) * (1.0 / f.measure));
            if (dot(nrm, mesh.vertex(f.vertex[1]) - mesh.vertex(f.vertex[0])) < 0.0)
                nrm = -nrm;
            f.normal = nrm;
            f.basis = eval_basis(mesh, e, f.ip);
            scvfs_.push_back(f);
        }
    }
    scv_offset_.push_back(static_cast<int>(scvs_.size()));
    scvf_offset_.push_back(static_cast<int>(scvfs_.size()));

    const auto& bedges = mesh.boundary_edges();
    for (int k = 0; k < static_cast<int>(bedges.size()); ++k) {
        const auto& be = bedges[k];
        const Vec2 p0 = mesh.vertex(be.v0), p1 = mesh.vertex(be.v1);
        const Vec2 m = 0.5 * (p0 + p1);
        const Vec2 nrm = right_normal(Segment{p0, p1}.direction());
        bfaces_.push_back({be.v0, be.element, k, p0, m, nrm, norm(m - p0), be.marker});
        bfaces_.push_back({be.v1, be.element, k, p1, m, nrm, norm(p1 - m), be.marker});
    }
}

double DualTopology::total_measure() const
{
    double a = 0.0;
    for (double m : cv_measure_)
        a += m;
    return a;
}

} // namespace stagbox
