#include "stagbox/coupling.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace stagbox {

std::string to_string(ProjectionKind kind)
{
    return kind == ProjectionKind::l2 ? "l2" : "area_weighted";
}

ProjectionKind parse_projection_kind(const std::string& name)
{
    if (name == "l2" || name == "L2") return ProjectionKind::l2;
    if (name == "area_weighted" || name == "weighted") return ProjectionKind::area_weighted;
    throw InvalidInput("unknown projection '" + name + "'");
}

ProjectionMatrix projection_matrix(const StaggeredGrid& ff, const DualTopology& pm,
                                   const std::vector<InterfaceFacet>& facets, ProjectionKind kind)
{
    std::map<int, std::map<int, double>> rows;
    const auto& mesh = pm.mesh();
    for (const auto& g : facets) {
        auto& row = rows[g.ff_face];
        if (kind == ProjectionKind::area_weighted) {
            row[g.pm_vertex] += g.measure;
            continue;
        }
        // exact integral of the linear edge trace over the facet
        const auto& edge = mesh.boundary_edges()[pm.boundary_subfaces()[g.pm_subface].edge];
        const Vec2 p0 = mesh.vertex(edge.v0), p1 = mesh.vertex(edge.v1);
        const Vec2 e = p1 - p0;
        const double l2 = dot(e, e);
        const double lam = 0.5 * (dot(g.a - p0, e) + dot(g.b - p0, e)) / l2;
        row[edge.v0] += g.measure * (1.0 - lam);
        row[edge.v1] += g.measure * lam;
    }
    ProjectionMatrix out;
    for (const auto& [face, row] : rows) {
        const double inv = 1.0 / ff.face_measure(face);
        WeightRow r;
        for (const auto& [v, w] : row)
            if (w != 0.0)
                r.emplace_back(v, w * inv);
        out.faces.push_back(face);
        out.rows.push_back(std::move(r));
    }
    return out;
}

CouplingContext::CouplingContext(FreeFlowModel& ff, const PorousModel& pm, std::vector<InterfaceFacet> facets,
                                 ProjectionKind kind, double alpha_bjs)
: ff_(&ff), pm_(&pm), facets_(std::move(facets)), kind_(kind), alpha_(alpha_bjs)
{
    const auto& grid = ff.grid();
    const auto& dual = pm.dual();
    if (!(alpha_ > 0.0))
        throw ParameterError("slip coefficient alpha must be positive");
    proj_ = projection_matrix(grid, dual, facets_, kind_);
    face_row_.assign(grid.num_faces(), -1);
    for (int k = 0; k < static_cast<int>(proj_.faces.size()); ++k)
        face_row_[proj_.faces[k]] = k;
    face_facets_.assign(grid.num_faces(), {});
    facet_sign_.resize(facets_.size());
    std::vector<char> subface_seen(dual.boundary_subfaces().size(), 0);
    for (int k = 0; k < static_cast<int>(facets_.size()); ++k) {
        face_facets_[facets_[k].ff_face].push_back(k);
        facet_sign_[k] = grid.outward_sign(facets_[k].ff_face);
        subface_seen[facets_[k].pm_subface] = 1;
    }
    for (int f : ff.coupling_faces())
        if (face_facets_[f].empty())
            throw CouplingMapError(fmt::format("free-flow coupling face {} overlaps no porous sub-face", f));
    for (std::size_t k = 0; k < subface_seen.size(); ++k) {
        const auto& bf = dual.boundary_subfaces()[k];
        if (!subface_seen[k] && pm.has_coupling_marker(bf.marker))
            throw CouplingMapError(fmt::format("porous coupling sub-face of vertex {} overlaps no free-flow face",
                                               bf.vertex));
    }

    // slip coefficient from the element under the face center
    for (int f : ff.coupling_faces()) {
        const Vec2 c = grid.face_center(f);
        const Vec2 t = unit_axis(1 - grid.face_index(f).d);
        int best = face_facets_[f].front();
        double best_dist = 1e300;
        for (int k : face_facets_[f]) {
            const auto& g = facets_[k];
            const double lo = std::min(dot(g.a, t), dot(g.b, t)), hi = std::max(dot(g.a, t), dot(g.b, t));
            const double s = dot(c, t);
            const double dist = s < lo ? lo - s : (s > hi ? s - hi : 0.0);
            if (dist < best_dist) {
                best_dist = dist;
                best = k;
            }
        }
        const Mat2& K = dual.mesh().element(facets_[best].pm_element).K;
        const double tKt = dot(t, K * t);
        if (!(tKt > 0.0))
            throw ParameterError(fmt::format("permeability is not positive along the interface at face {}", f));
        ff.set_slip_coefficient(f, alpha_ / std::sqrt(tKt));
    }
}

const WeightRow& CouplingContext::weights(int ff_face) const
{
    if (ff_face < 0 || ff_face >= static_cast<int>(face_row_.size()) || face_row_[ff_face] < 0)
        throw CouplingMapError(fmt::format("face {} has no interface facets", ff_face));
    return proj_.rows[face_row_[ff_face]];
}

double CouplingContext::project(int ff_face, std::span<const double> vertex_values) const
{
    double s = 0.0;
    for (const auto& [v, w] : weights(ff_face))
        s += w * vertex_values[v];
    return s;
}

template<class T>
T CouplingContext::facet_flux(int k, std::span<const T> x) const
{
    const auto& g = facets_[k];
    const T vn = facet_sign_[k] * ff_->velocity(x, g.ff_face);
    const double rho_up = upwind(value(vn), ff_->params().rho, pm_->params().rho, ff_->params().zeta);
    return (g.measure * rho_up) * vn;
}

template<class T>
void CouplingContext::evaluate(std::span<const T> x, std::span<T> traction, std::span<T> ff_mass_flux,
                               std::span<T> pm_flux) const
{
    for (std::size_t k = 0; k < proj_.faces.size(); ++k) {
        T s = T(0.0);
        for (const auto& [v, w] : proj_.rows[k])
            s += w * x[pm_->vertex_dof(v)];
        traction[proj_.faces[k]] = s;
    }
    for (int k = 0; k < static_cast<int>(facets_.size()); ++k) {
        const T F = facet_flux(k, x);
        ff_mass_flux[facets_[k].ff_face] += F;
        pm_flux[facets_[k].pm_vertex] -= F;
    }
}

double CouplingContext::interface_imbalance(std::span<const double> x) const
{
    const auto& grid = ff_->grid();
    std::vector<double> traction(grid.num_faces(), 0.0), ff_flux(grid.num_faces(), 0.0);
    std::vector<double> pm_flux(pm_->mesh().num_vertices(), 0.0);
    evaluate<double>(x, traction, ff_flux, pm_flux);
    double s = 0.0;
    for (double F : ff_flux)
        s += F;
    for (double F : pm_flux)
        s += F;
    return s;
}

double CouplingContext::interface_flux(std::span<const double> x) const
{
    double s = 0.0;
    for (int k = 0; k < static_cast<int>(facets_.size()); ++k)
        s += facet_flux(k, x);
    return s;
}

#define STAGBOX_INSTANTIATE(T)                                                                    \
    template T CouplingContext::facet_flux<T>(int, std::span<const T>) const;                    \
    template void CouplingContext::evaluate<T>(std::span<const T>, std::span<T>, std::span<T>, \
                                               std::span<T>) const;

STAGBOX_INSTANTIATE(double)
STAGBOX_INSTANTIATE(Dual)
STAGBOX_INSTANTIATE(Tracer)

#undef STAGBOX_INSTANTIATE

} // namespace stagbox
