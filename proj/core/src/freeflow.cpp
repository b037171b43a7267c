#include "stagbox/freeflow.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

namespace stagbox {

std::string to_string(FfBcKind kind)
{
    switch (kind) {
    case FfBcKind::velocity_dirichlet: return "velocity_dirichlet";
    case FfBcKind::pressure_outflow: return "pressure_outflow";
    case FfBcKind::symmetry: return "symmetry";
    case FfBcKind::no_slip: return "no_slip";
    case FfBcKind::coupling: return "coupling";
    }
    return "unknown";
}

const FfBoundaryCondition& FfBoundarySpec::at(const std::string& marker) const
{
    const auto it = by_marker.find(marker);
    if (it == by_marker.end())
        throw ConfigurationError(fmt::format("free-flow boundary marker '{}' has no boundary condition", marker));
    return it->second;
}

void FreeFlowParams::validate() const
{
    if (!(rho > 0.0) || !(mu > 0.0))
        throw ParameterError("free flow needs positive density and viscosity");
    if (!(zeta >= 0.5 && zeta <= 1.0))
        throw ParameterError("upwind weight must lie in [0.5, 1]");
}

FreeFlowModel::FreeFlowModel(const StaggeredGrid& grid, FfBoundarySpec spec, FreeFlowParams params)
: grid_(&grid), spec_(std::move(spec)), params_(std::move(params))
{
    params_.validate();
    const int nf = grid.num_faces();
    face_bc_.assign(nf, nullptr);
    pinned_.assign(nf, 0);
    pinned_value_.assign(nf, 0.0);
    beta_.assign(nf, 0.0);
    for (int f = 0; f < nf; ++f) {
        if (!grid.face_exists(f))
            continue;
        if (!grid.is_boundary_face(f))
            continue;
        const auto& bc = spec_.at(grid.marker(f));
        face_bc_[f] = &bc;
        switch (bc.kind) {
        case FfBcKind::velocity_dirichlet:
            if (!bc.velocity)
                throw ConfigurationError(fmt::format("marker '{}' lacks a velocity function", grid.marker(f)));
            pinned_[f] = 1;
            pinned_value_[f] = bc.velocity(grid.face_center(f))[grid.face_index(f).d];
            break;
        case FfBcKind::no_slip:
        case FfBcKind::symmetry:
            pinned_[f] = 1;
            break;
        case FfBcKind::pressure_outflow:
            if (!bc.pressure)
                throw ConfigurationError(fmt::format("marker '{}' lacks a pressure function", grid.marker(f)));
            break;
        case FfBcKind::coupling:
            break;
        }
    }

    mass_src_.assign(grid.num_cells(), 0.0);
    if (params_.mass_source)
        for (int c = 0; c < grid.num_cells(); ++c)
            if (grid.active(c))
                mass_src_[c] = integrate_rect(params_.mass_source, grid.cell_rect(c), params_.quadrature);
    mom_src_.assign(nf, 0.0);
    for (int f = 0; f < nf; ++f) {
        if (!grid.face_exists(f) || pinned_[f])
            continue;
        const int d = grid.face_index(f).d;
        const Rect r = grid.face_dual_rect(f);
        double s = params_.g[d] * params_.rho * r.area();
        if (params_.force)
            s += integrate_rect([&](const Vec2& p) { return params_.force(p)[d]; }, r, params_.quadrature);
        mom_src_[f] = s;
    }
}

std::vector<int> FreeFlowModel::coupling_faces() const
{
    std::vector<int> out;
    for (int f = 0; f < grid_->num_faces(); ++f)
        if (is_coupling(f))
            out.push_back(f);
    return out;
}

bool FreeFlowModel::has_pressure_boundary() const
{
    for (const auto* bc : face_bc_)
        if (bc && (bc->kind == FfBcKind::pressure_outflow || bc->kind == FfBcKind::coupling))
            return true;
    return false;
}

void FreeFlowModel::set_dof_maps(std::vector<int> cell_dof, std::vector<int> face_dof)
{
    cell_dof_ = std::move(cell_dof);
    face_dof_ = std::move(face_dof);
}

double FreeFlowModel::wall_velocity(const FfBoundaryCondition& bc, const Vec2& p, int component) const
{
    if (bc.kind == FfBcKind::velocity_dirichlet)
        return bc.velocity(p)[component];
    return 0.0;
}

template<class T>
T FreeFlowModel::mass_residual(int cell, std::span<const T> x, const FfCouplingValues<T>& cv) const
{
    const auto& g = *grid_;
    const int i = g.cell_i(cell), j = g.cell_j(cell);
    const std::array<int, 4> faces{g.face_id(0, i, j), g.face_id(0, i + 1, j), g.face_id(1, j, i),
                                   g.face_id(1, j + 1, i)};
    const std::array<double, 4> sign{-1.0, 1.0, -1.0, 1.0};
    T r = T(-params_.rho * mass_src_[cell]);
    for (int k = 0; k < 4; ++k) {
        const int f = faces[k];
        if (is_coupling(f))
            r += cv.mass_flux[f];
        else
            r += (sign[k] * params_.rho * g.face_measure(f)) * velocity(x, f);
    }
    return r;
}

template<class T>
T FreeFlowModel::momentum_residual(int f, std::span<const T> x, const FfCouplingValues<T>& cv) const
{
    const auto& g = *grid_;
    const auto [d, n, c] = g.face_index(f);
    const int t = 1 - d;
    const double hd = g.h(d), ht = g.h(t);
    const double rho = params_.rho, mu = params_.mu, zeta = params_.zeta;
    const bool inertia = params_.enable_inertia;
    const T u = velocity(x, f);
    const Vec2 xf = g.face_center(f);
    T r = T(-mom_src_[f]);

    // frontal faces through the adjacent cell centers
    for (int side = 0; side < 2; ++side) {
        const int kc = n - 1 + side;
        const double sgn = side == 1 ? 1.0 : -1.0;
        if (g.active(d, kc, c)) {
            const T u_lo = side == 1 ? u : velocity(x, g.face_id(d, n - 1, c));
            const T u_hi = side == 1 ? velocity(x, g.face_id(d, n + 1, c)) : u;
            T flux = pressure(x, g.cell_id(d, kc, c)) - (2.0 * mu / hd) * (u_hi - u_lo);
            if (inertia) {
                const T ubar = 0.5 * (u_lo + u_hi);
                flux += rho * ubar * upwind(value(ubar), u_lo, u_hi, zeta);
            }
            r += (sgn * ht) * flux;
        }
        else {
            const auto& bc = *face_bc_[f];
            T traction;
            if (bc.kind == FfBcKind::coupling)
                traction = cv.traction[f];
            else {
                traction = T(bc.pressure(xf));
                if (inertia)
                    traction += rho * u * u;
            }
            r += (sgn * ht) * traction;
        }
    }

    // lateral faces, split into one half per adjacent cell column
    for (int s = -1; s <= 1; s += 2) {
        const int node_t = c + (s > 0 ? 1 : 0);
        const int c_oth = c + s;
        for (int ac = n - 1; ac <= n; ++ac) {
            if (!g.active(d, ac, c))
                continue;
            const int wf = g.face_id(t, node_t, ac);
            const T w = velocity(x, wf);
            // corner point on the lateral face line at the position of this face
            Vec2 corner = xf;
            corner[t] = g.domain().lo(t) + node_t * ht;
            const int wf_lo = g.face_exists(t, node_t, n - 1) ? g.face_id(t, node_t, n - 1) : -1;
            const int wf_hi = g.face_exists(t, node_t, n) ? g.face_id(t, node_t, n) : -1;
            T flux = T(0.0);
            if (g.active(d, ac, c_oth)) {
                const T u_oth = velocity(x, g.face_id(d, n, c_oth));
                const T dudt = (s / ht) * (u_oth - u);
                T dwdd;
                if (wf_lo >= 0 && wf_hi >= 0)
                    dwdd = (velocity(x, wf_hi) - velocity(x, wf_lo)) / hd;
                else {
                    const auto& bc = *face_bc_[f];
                    if (bc.kind == FfBcKind::coupling) {
                        const double nd = ac == n ? -1.0 : 1.0;
                        const double delta = 0.5 * hd;
                        const double gs = bc.slip_source ? bc.slip_source(corner) : 0.0;
                        const T w_wall = (w - (delta * nd) * dudt - delta * gs) / (1.0 + beta_[f] * delta);
                        dwdd = (nd / delta) * (w_wall - w);
                    }
                    else if (bc.kind == FfBcKind::pressure_outflow && bc.normal_gradient)
                        dwdd = T(g.outward_sign(f) * bc.normal_gradient(corner));
                    else
                        dwdd = T(0.0);
                }
                flux = -mu * (dudt + dwdd);
                if (inertia)
                    flux += rho * w * upwind(s * value(w), u, u_oth, zeta);
            }
            else {
                const auto& bc = *face_bc_[wf];
                switch (bc.kind) {
                case FfBcKind::velocity_dirichlet:
                case FfBcKind::no_slip: {
                    const double u_wall = wall_velocity(bc, corner, d);
                    const T dudt = (2.0 * s / ht) * (T(u_wall) - u);
                    Vec2 pa = corner, pb = corner;
                    pa[d] -= 0.5 * hd;
                    pb[d] += 0.5 * hd;
                    const double dwdd = (wall_velocity(bc, pb, t) - wall_velocity(bc, pa, t)) / hd;
                    flux = -mu * (dudt + dwdd);
                    if (inertia)
                        flux += rho * u_wall * w;
                    break;
                }
                case FfBcKind::symmetry:
                    flux = T(0.0);
                    break;
                case FfBcKind::pressure_outflow: {
                    T dn_dt = T(0.0);
                    if (wf_lo >= 0 && wf_hi >= 0)
                        dn_dt = (velocity(x, wf_hi) - velocity(x, wf_lo)) / hd;
                    const double gn = bc.normal_gradient ? bc.normal_gradient(corner) : 0.0;
                    flux = -mu * (s * gn + dn_dt);
                    if (inertia)
                        flux += rho * w * (u + 0.5 * ht * gn);
                    break;
                }
                case FfBcKind::coupling: {
                    const double delta = 0.5 * ht;
                    const double gs = bc.slip_source ? bc.slip_source(corner) : 0.0;
                    T dn_dt = T(0.0);
                    if (wf_lo >= 0 && wf_hi >= 0)
                        dn_dt = (velocity(x, wf_hi) - velocity(x, wf_lo)) / hd;
                    const T u_wall = (u - (delta * s) * dn_dt - delta * gs) / (1.0 + beta_[wf] * delta);
                    flux = -mu * ((s / delta) * (u_wall - u) + dn_dt);
                    if (inertia)
                        flux += rho * w * u_wall;
                    break;
                }
                }
            }
            r += (s * 0.5 * hd) * flux;
        }
    }
    return r;
}

template<class T>
void FreeFlowModel::residual(std::span<const T> x, const FfCouplingValues<T>& cv, std::span<T> r) const
{
    const auto& g = *grid_;
    for (int c = 0; c < g.num_cells(); ++c)
        if (g.active(c))
            r[cell_dof_[c]] = mass_residual(c, x, cv);
    for (int f = 0; f < g.num_faces(); ++f)
        if (face_dof_[f] >= 0)
            r[face_dof_[f]] = momentum_residual(f, x, cv);
}

double FreeFlowModel::boundary_outflow(std::span<const double> x) const
{
    const auto& g = *grid_;
    double out = 0.0;
    for (int f = 0; f < g.num_faces(); ++f)
        if (g.face_exists(f) && g.is_boundary_face(f) && !is_coupling(f))
            out += params_.rho * g.outward_sign(f) * g.face_measure(f) * velocity(x, f);
    return out;
}

#define STAGBOX_INSTANTIATE(T)                                                                           \
    template T FreeFlowModel::mass_residual<T>(int, std::span<const T>, const FfCouplingValues<T>&) const; \
    template T FreeFlowModel::momentum_residual<T>(int, std::span<const T>, const FfCouplingValues<T>&) const; \
    template void FreeFlowModel::residual<T>(std::span<const T>, const FfCouplingValues<T>&, std::span<T>) const;

STAGBOX_INSTANTIATE(double)
STAGBOX_INSTANTIATE(Dual)
STAGBOX_INSTANTIATE(Tracer)

#undef STAGBOX_INSTANTIATE

} // namespace stagbox
