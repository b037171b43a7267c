#pragma once

#include "autodiff.hpp"
#include "dual_topology.hpp"
#include "quadrature.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace stagbox {

enum class PmBcKind { dirichlet, no_flow, coupling };

std::string to_string(PmBcKind kind);

struct PmBoundaryCondition {
    PmBcKind kind = PmBcKind::no_flow;
    ScalarField pressure; // dirichlet

    static PmBoundaryCondition dirichlet(ScalarField p) { return {PmBcKind::dirichlet, std::move(p)}; }
    static PmBoundaryCondition no_flow() { return {PmBcKind::no_flow, {}}; }
    static PmBoundaryCondition coupling() { return {PmBcKind::coupling, {}}; }
};

struct PmBoundarySpec {
    std::map<std::string, PmBoundaryCondition> by_marker;

    const PmBoundaryCondition& at(const std::string& marker) const;
};

struct PorousParams {
    double mu = 1.0;
    double rho = 1.0;
    Vec2 g{};
    double porosity = 1.0;    // inert for stationary single-phase flow
    double c_forchheimer = 0.0;
    double zeta = 1.0;
    ScalarField source;       // q, divergence of the Darcy velocity
    QuadratureKind quadrature = QuadratureKind::midpoint;

    void validate() const;
};

//! Speed s >= 0 with s (1 + beta s) = d.
double solve_forchheimer_speed(double d, double beta);

//! Darcy velocity -K/mu (grad p - rho g) at an scvf from vertex pressures of its element.
template<class T>
std::array<T, 2> darcy_velocity(const BoxElement& el, const BasisEval& basis, std::span<const T> p_local,
                                double mu, double rho, const Vec2& g);

//! Vertex-centered finite volume discretization of stationary single-phase Darcy
//! (optionally Forchheimer) flow.
class PorousModel {
public:
    PorousModel(const DualTopology& dual, PmBoundarySpec spec, PorousParams params);

    const DualTopology& dual() const { return *dual_; }
    const BoxMesh& mesh() const { return dual_->mesh(); }
    const PorousParams& params() const { return params_; }

    bool is_dirichlet(int v) const { return dirichlet_[v] != 0; }
    double dirichlet_value(int v) const { return dirichlet_value_[v]; }
    double source_integral(int v) const { return src_[v]; }
    bool has_pressure_boundary() const;
    bool has_coupling_marker(const std::string& marker) const
    {
        const auto it = spec_.by_marker.find(marker);
        return it != spec_.by_marker.end() && it->second.kind == PmBcKind::coupling;
    }
    //! Forchheimer factor c_F sqrt(K) rho / mu of an element (0 without Forchheimer).
    double forchheimer_beta(int e) const { return beta_.empty() ? 0.0 : beta_[e]; }

    void set_dof_map(std::vector<int> vertex_dof) { vertex_dof_ = std::move(vertex_dof); }
    int vertex_dof(int v) const { return vertex_dof_[v]; }

    //! Mass flux |sigma| rho v.n across scvf k, positive from vertex[0] to vertex[1].
    template<class T>
    T scvf_flux(int k, std::span<const T> x) const;

    //! Writes the residual of each control volume to r[vertex_dof]. boundary_flux
    //! holds per-vertex coupling inflow contributions (already signed).
    template<class T>
    void residual(std::span<const T> x, std::span<const T> boundary_flux, std::span<T> r) const;

    //! Net flux balance of every control volume (outflow - source), Dirichlet
    //! vertices included, for post-processing of boundary reactions.
    std::vector<double> control_volume_balance(std::span<const double> x, std::span<const double> boundary_flux) const;

private:
    const DualTopology* dual_;
    PmBoundarySpec spec_;
    PorousParams params_;
    std::vector<char> dirichlet_;
    std::vector<double> dirichlet_value_;
    std::vector<double> src_;
    std::vector<double> beta_;
    std::vector<int> vertex_dof_;
};

} // namespace stagbox
