#include "stagbox/problem.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace stagbox {

DofLayout::DofLayout(const FreeFlowModel& ff, const PorousModel& pm)
{
    const auto& grid = ff.grid();
    cell_dof_.assign(grid.num_cells(), -1);
    face_dof_.assign(grid.num_faces(), -1);
    for (int c = 0; c < grid.num_cells(); ++c)
        if (grid.active(c)) {
            cell_dof_[c] = size();
            kind_.push_back(DofType::ff_pressure);
            entity_.push_back(c);
        }
    n_cell_ = size();
    for (int f = 0; f < grid.num_faces(); ++f)
        if (grid.face_exists(f) && !ff.is_pinned(f)) {
            face_dof_[f] = size();
            kind_.push_back(DofType::ff_velocity);
            entity_.push_back(f);
        }
    n_face_ = size() - n_cell_;
    const int nv = pm.mesh().num_vertices();
    vertex_dof_.resize(nv);
    for (int v = 0; v < nv; ++v) {
        vertex_dof_[v] = size();
        kind_.push_back(DofType::pm_pressure);
        entity_.push_back(v);
    }
    n_vertex_ = nv;
}

std::string DofLayout::describe(int k) const
{
    switch (kind_[k]) {
    case DofType::ff_pressure: return fmt::format("free-flow pressure of cell {}", entity_[k]);
    case DofType::ff_velocity: return fmt::format("free-flow velocity of face {}", entity_[k]);
    case DofType::pm_pressure: return fmt::format("porous pressure of vertex {}", entity_[k]);
    }
    return "unknown";
}

CoupledProblem::CoupledProblem(std::shared_ptr<const StaggeredGrid> ff_grid, FfBoundarySpec ff_spec,
                               FreeFlowParams ff_params, std::shared_ptr<const BoxMesh> pm_mesh,
                               PmBoundarySpec pm_spec, PorousParams pm_params, const std::vector<Segment>& interface,
                               ProjectionKind kind, double alpha_bjs)
: ff_grid_(std::move(ff_grid)), pm_mesh_(std::move(pm_mesh))
{
    dual_ = std::make_unique<DualTopology>(*pm_mesh_);
    ff_ = std::make_unique<FreeFlowModel>(*ff_grid_, std::move(ff_spec), std::move(ff_params));
    pm_ = std::make_unique<PorousModel>(*dual_, std::move(pm_spec), std::move(pm_params));
    if (!ff_->has_pressure_boundary() && !pm_->has_pressure_boundary())
        throw ConfigurationError("no pressure boundary condition on either subdomain");
    coupling_ = std::make_unique<CouplingContext>(*ff_, *pm_, intersect_interface(*ff_grid_, *dual_, interface),
                                                  kind, alpha_bjs);
    layout_ = DofLayout(*ff_, *pm_);
    ff_->set_dof_maps(layout_.cell_dof(), layout_.face_dof());
    pm_->set_dof_map(layout_.vertex_dof());
}

template<class T>
void CoupledProblem::residual(std::span<const T> x, std::span<T> r) const
{
    const int nf = ff_grid_->num_faces();
    std::vector<T> traction(nf), mass_flux(nf), pm_flux(pm_mesh_->num_vertices());
    coupling_->evaluate<T>(x, traction, mass_flux, pm_flux);
    ff_->residual<T>(x, FfCouplingValues<T>{traction, mass_flux}, r);
    pm_->residual<T>(x, pm_flux, r);
}

std::vector<double> CoupledProblem::residual(std::span<const double> x) const
{
    std::vector<double> r(size());
    residual<double>(x, r);
    for (int k = 0; k < size(); ++k)
        if (!std::isfinite(r[k]))
            throw SolverError("non-finite residual at " + layout_.describe(k));
    return r;
}

std::vector<double> CoupledProblem::interpolate(const VectorField& v_ff, const ScalarField& p_ff,
                                                const ScalarField& p_pm) const
{
    std::vector<double> x(size(), 0.0);
    const auto& g = *ff_grid_;
    for (int c = 0; c < g.num_cells(); ++c)
        if (layout_.cell_dof()[c] >= 0)
            x[layout_.cell_dof()[c]] = p_ff(g.cell_center(c));
    for (int f = 0; f < g.num_faces(); ++f)
        if (layout_.face_dof()[f] >= 0)
            x[layout_.face_dof()[f]] = v_ff(g.face_center(f))[g.face_index(f).d];
    for (int v = 0; v < pm_mesh_->num_vertices(); ++v)
        x[layout_.vertex_dof()[v]] = p_pm(pm_mesh_->vertex(v));
    return x;
}

std::vector<double> CoupledProblem::ff_cell_pressures(std::span<const double> x) const
{
    std::vector<double> p(ff_grid_->num_cells(), 0.0);
    for (int c = 0; c < ff_grid_->num_cells(); ++c)
        if (layout_.cell_dof()[c] >= 0)
            p[c] = x[layout_.cell_dof()[c]];
    return p;
}

std::vector<double> CoupledProblem::ff_face_velocities(std::span<const double> x) const
{
    std::vector<double> v(ff_grid_->num_faces(), 0.0);
    for (int f = 0; f < ff_grid_->num_faces(); ++f)
        if (ff_grid_->face_exists(f))
            v[f] = ff_->velocity<double>(x, f);
    return v;
}

std::vector<double> CoupledProblem::pm_pressures(std::span<const double> x) const
{
    std::vector<double> p(pm_mesh_->num_vertices());
    for (int v = 0; v < pm_mesh_->num_vertices(); ++v)
        p[v] = x[layout_.vertex_dof()[v]];
    return p;
}

MassBalance CoupledProblem::mass_balance(std::span<const double> x) const
{
    MassBalance mb;
    const int nf = ff_grid_->num_faces(), nv = pm_mesh_->num_vertices();
    std::vector<double> traction(nf), ff_flux(nf), pm_flux(nv);
    coupling_->evaluate<double>(x, traction, ff_flux, pm_flux);
    mb.interface_imbalance = coupling_->interface_imbalance(x);
    for (int k = 0; k < static_cast<int>(coupling_->facets().size()); ++k)
        mb.interface_scale += std::abs(coupling_->facet_flux<double>(k, x));
    mb.ff_outflow = ff_->boundary_outflow(x);
    for (int c = 0; c < ff_grid_->num_cells(); ++c)
        if (ff_grid_->active(c))
            mb.ff_source += ff_->params().rho * ff_->mass_source_integral(c);
    // the outer boundary flux of a Dirichlet vertex is whatever closes its balance
    const auto acc = pm_->control_volume_balance(x, pm_flux);
    for (int v = 0; v < nv; ++v) {
        mb.pm_source += pm_->params().rho * pm_->source_integral(v);
        if (pm_->is_dirichlet(v))
            mb.pm_outflow -= acc[v];
    }
    return mb;
}

double MassBalance::relative() const
{
    const double scale = std::max({1.0, std::abs(ff_outflow), std::abs(pm_outflow), std::abs(ff_source),
                                   std::abs(pm_source)});
    return std::abs(global()) / scale;
}

template void CoupledProblem::residual<double>(std::span<const double>, std::span<double>) const;
template void CoupledProblem::residual<Dual>(std::span<const Dual>, std::span<Dual>) const;
template void CoupledProblem::residual<Tracer>(std::span<const Tracer>, std::span<Tracer>) const;

} // namespace stagbox
