#include "stagbox/porous.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace stagbox {

std::string to_string(PmBcKind kind)
{
    switch (kind) {
    case PmBcKind::dirichlet: return "dirichlet";
    case PmBcKind::no_flow: return "no_flow";
    case PmBcKind::coupling: return "coupling";
    }
    return "unknown";
}

const PmBoundaryCondition& PmBoundarySpec::at(const std::string& marker) const
{
    const auto it = by_marker.find(marker);
    if (it == by_marker.end())
        throw ConfigurationError(fmt::format("porous boundary marker '{}' has no boundary condition", marker));
    return it->second;
}

void PorousParams::validate() const
{
    if (!(mu > 0.0) || !(rho > 0.0))
        throw ParameterError("porous medium needs positive density and viscosity");
    if (!(porosity > 0.0 && porosity <= 1.0))
        throw ParameterError("porosity must lie in (0, 1]");
    if (!(c_forchheimer >= 0.0))
        throw ParameterError("Forchheimer coefficient must be non-negative");
    if (!(zeta >= 0.5 && zeta <= 1.0))
        throw ParameterError("upwind weight must lie in [0.5, 1]");
}

double solve_forchheimer_speed(double d, double beta)
{
    if (!(d >= 0.0) || !(beta >= 0.0))
        throw DomainError("Forchheimer speed needs non-negative drive and coefficient");
    // 2d / (1 + sqrt(1 + 4 beta d)) avoids the cancellation of the textbook root
    return 2.0 * d / (1.0 + std::sqrt(1.0 + 4.0 * beta * d));
}

template<class T>
std::array<T, 2> darcy_velocity(const BoxElement& el, const BasisEval& basis, std::span<const T> p_local,
                                double mu, double rho, const Vec2& g)
{
    T gx = T(-rho * g.x), gy = T(-rho * g.y);
    for (int k = 0; k < el.num_corners; ++k) {
        gx += basis.grad[k].x * p_local[k];
        gy += basis.grad[k].y * p_local[k];
    }
    const Mat2& K = el.K;
    return {(-1.0 / mu) * (K.xx * gx + K.xy * gy), (-1.0 / mu) * (K.yx * gx + K.yy * gy)};
}

PorousModel::PorousModel(const DualTopology& dual, PmBoundarySpec spec, PorousParams params)
: dual_(&dual), spec_(std::move(spec)), params_(std::move(params))
{
    params_.validate();
    const auto& mesh = dual.mesh();
    const int nv = mesh.num_vertices();
    dirichlet_.assign(nv, 0);
    dirichlet_value_.assign(nv, 0.0);
    for (const auto& bf : dual.boundary_subfaces()) {
        const auto& bc = spec_.at(bf.marker);
        if (bc.kind == PmBcKind::dirichlet) {
            if (!bc.pressure)
                throw ConfigurationError(fmt::format("porous marker '{}' lacks a pressure function", bf.marker));
            dirichlet_[bf.vertex] = 1;
            dirichlet_value_[bf.vertex] = bc.pressure(mesh.vertex(bf.vertex));
        }
    }
    src_.assign(nv, 0.0);
    if (params_.source)
        for (const auto& scv : dual.scvs())
            src_[scv.vertex] += integrate_polygon(params_.source, scv.corners, params_.quadrature);
    if (params_.c_forchheimer > 0.0) {
        beta_.resize(mesh.num_elements());
        for (int e = 0; e < mesh.num_elements(); ++e) {
            const Mat2& K = mesh.element(e).K;
            if (!K.is_isotropic())
                throw ParameterError(fmt::format("Forchheimer flow needs a scalar permeability (element {})", e));
            beta_[e] = params_.c_forchheimer * std::sqrt(K.xx) * params_.rho / params_.mu;
        }
    }
}

bool PorousModel::has_pressure_boundary() const
{
    for (char d : dirichlet_)
        if (d)
            return true;
    return false;
}

template<class T>
T PorousModel::scvf_flux(int k, std::span<const T> x) const
{
    const auto& f = dual_->scvfs()[k];
    const auto& el = mesh().element(f.element);
    std::array<T, 4> p;
    for (int i = 0; i < el.num_corners; ++i)
        p[i] = x[vertex_dof_[el.v[i]]];
    auto v = darcy_velocity<T>(el, f.basis, std::span<const T>(p.data(), el.num_corners), params_.mu,
                               params_.rho, params_.g);
    if (!beta_.empty()) {
        const T speed = sqrt(v[0] * v[0] + v[1] * v[1]);
        const T factor = 2.0 / (1.0 + sqrt(1.0 + (4.0 * beta_[f.element]) * speed));
        v[0] *= factor;
        v[1] *= factor;
    }
    const T vn = f.normal.x * v[0] + f.normal.y * v[1];
    const double rho_up = upwind(value(vn), params_.rho, params_.rho, params_.zeta);
    return (f.measure * rho_up) * vn;
}

template<class T>
void PorousModel::residual(std::span<const T> x, std::span<const T> boundary_flux, std::span<T> r) const
{
    const auto& mesh = dual_->mesh();
    const int nv = mesh.num_vertices();
    std::vector<T> acc(nv);
    for (int v = 0; v < nv; ++v)
        acc[v] = boundary_flux[v] - params_.rho * src_[v];
    const auto& scvfs = dual_->scvfs();
    for (int k = 0; k < static_cast<int>(scvfs.size()); ++k) {
        const auto& f = scvfs[k];
        if (dirichlet_[f.vertex[0]] && dirichlet_[f.vertex[1]])
            continue;
        const T F = scvf_flux(k, x);
        acc[f.vertex[0]] += F;
        acc[f.vertex[1]] -= F;
    }
    for (int v = 0; v < nv; ++v) {
        const int k = vertex_dof_[v];
        r[k] = dirichlet_[v] ? x[k] - dirichlet_value_[v] : acc[v];
    }
}

std::vector<double> PorousModel::control_volume_balance(std::span<const double> x,
                                                        std::span<const double> boundary_flux) const
{
    const int nv = mesh().num_vertices();
    std::vector<double> acc(nv);
    for (int v = 0; v < nv; ++v)
        acc[v] = boundary_flux[v] - params_.rho * src_[v];
    const auto& scvfs = dual_->scvfs();
    for (int k = 0; k < static_cast<int>(scvfs.size()); ++k) {
        const double F = scvf_flux(k, x);
        acc[scvfs[k].vertex[0]] += F;
        acc[scvfs[k].vertex[1]] -= F;
    }
    return acc;
}

#define STAGBOX_INSTANTIATE(T)                                                                                  \
    template std::array<T, 2> darcy_velocity<T>(const BoxElement&, const BasisEval&, std::span<const T>, double, \
                                                double, const Vec2&);                                          \
    template T PorousModel::scvf_flux<T>(int, std::span<const T>) const;                                      \
    template void PorousModel::residual<T>(std::span<const T>, std::span<const T>, std::span<T>) const;

STAGBOX_INSTANTIATE(double)
STAGBOX_INSTANTIATE(Dual)
STAGBOX_INSTANTIATE(Tracer)

#undef STAGBOX_INSTANTIATE

} // namespace stagbox
