#pragma once

#include "autodiff.hpp"
#include "quadrature.hpp"
#include "structured_grid.hpp"

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace stagbox {

enum class FfBcKind { velocity_dirichlet, pressure_outflow, symmetry, no_slip, coupling };

std::string to_string(FfBcKind kind);

struct FfBoundaryCondition {
    FfBcKind kind = FfBcKind::no_slip;
    VectorField velocity;     // velocity_dirichlet
    ScalarField pressure;     // pressure_outflow
    ScalarField slip_source;  // coupling: inhomogeneous term of the slip condition, default 0
    ScalarField normal_gradient; // pressure_outflow: outward normal derivative of the tangential velocity, default 0

    static FfBoundaryCondition dirichlet(VectorField v) { return {FfBcKind::velocity_dirichlet, std::move(v), {}, {}, {}}; }
    static FfBoundaryCondition outflow(ScalarField p, ScalarField normal_gradient = {})
    {
        return {FfBcKind::pressure_outflow, {}, std::move(p), {}, std::move(normal_gradient)};
    }
    static FfBoundaryCondition symmetry() { return {FfBcKind::symmetry, {}, {}, {}, {}}; }
    static FfBoundaryCondition no_slip() { return {FfBcKind::no_slip, {}, {}, {}, {}}; }
    static FfBoundaryCondition coupling(ScalarField g = {}) { return {FfBcKind::coupling, {}, {}, std::move(g), {}}; }
};

//! Boundary condition per face marker.
struct FfBoundarySpec {
    std::map<std::string, FfBoundaryCondition> by_marker;

    const FfBoundaryCondition& at(const std::string& marker) const;
};

struct FreeFlowParams {
    double rho = 1.0;
    double mu = 1.0;
    Vec2 g{};
    bool enable_inertia = true;
    double zeta = 1.0;
    VectorField force;        // momentum source f, per unit volume
    ScalarField mass_source;  // q, divergence of the velocity
    QuadratureKind quadrature = QuadratureKind::fifth_order;

    void validate() const;
};

//! Per-evaluation values supplied by the interface: projected porous pressure
//! (normal traction) and summed facet mass fluxes, both indexed by face id.
template<class T>
struct FfCouplingValues {
    std::span<const T> traction;
    std::span<const T> mass_flux;
};

//! Staggered-grid discretization of the stationary incompressible
//! (Navier-)Stokes equations. Owns boundary data and precomputed source integrals;
//! unknowns are addressed through cell and face index maps set by the DOF layout.
class FreeFlowModel {
public:
    FreeFlowModel(const StaggeredGrid& grid, FfBoundarySpec spec, FreeFlowParams params);

    const StaggeredGrid& grid() const { return *grid_; }
    const FreeFlowParams& params() const { return params_; }
    const FfBoundarySpec& spec() const { return spec_; }

    //! Kind of a boundary face; interior faces report nullptr.
    const FfBoundaryCondition* bc(int f) const { return face_bc_[f]; }
    bool is_coupling(int f) const { return face_bc_[f] && face_bc_[f]->kind == FfBcKind::coupling; }
    bool is_pinned(int f) const { return pinned_[f] != 0; }
    double pinned_value(int f) const { return pinned_value_[f]; }
    std::vector<int> coupling_faces() const;
    bool has_pressure_boundary() const;

    void set_slip_coefficient(int f, double beta) { beta_[f] = beta; }
    double slip_coefficient(int f) const { return beta_[f]; }

    //! Index maps into the global state; -1 for cells/faces without unknown.
    void set_dof_maps(std::vector<int> cell_dof, std::vector<int> face_dof);
    int cell_dof(int c) const { return cell_dof_[c]; }
    int face_dof(int f) const { return face_dof_[f]; }

    double mass_source_integral(int c) const { return mass_src_[c]; }
    double momentum_source_integral(int f) const { return mom_src_[f]; }

    template<class T>
    T velocity(std::span<const T> x, int f) const
    {
        const int k = face_dof_[f];
        return k >= 0 ? x[k] : T(pinned_value_[f]);
    }
    template<class T>
    T pressure(std::span<const T> x, int c) const { return x[cell_dof_[c]]; }

    //! Outflow minus source for one active cell.
    template<class T>
    T mass_residual(int cell, std::span<const T> x, const FfCouplingValues<T>& cv) const;

    //! Momentum balance of the dual control volume of one velocity unknown.
    template<class T>
    T momentum_residual(int face, std::span<const T> x, const FfCouplingValues<T>& cv) const;

    //! Writes mass residuals to r[cell_dof] and momentum residuals to r[face_dof].
    template<class T>
    void residual(std::span<const T> x, const FfCouplingValues<T>& cv, std::span<T> r) const;

    //! Net mass outflow through non-coupling boundary faces.
    double boundary_outflow(std::span<const double> x) const;

private:
    double wall_velocity(const FfBoundaryCondition& bc, const Vec2& p, int component) const;

    const StaggeredGrid* grid_;
    FfBoundarySpec spec_;
    FreeFlowParams params_;
    std::vector<const FfBoundaryCondition*> face_bc_;
    std::vector<char> pinned_;
    std::vector<double> pinned_value_;
    std::vector<double> beta_;
    std::vector<int> cell_dof_, face_dof_;
    std::vector<double> mass_src_, mom_src_;
};

} // namespace stagbox
