#pragma once

#include "coupling.hpp"
#include "freeflow.hpp"
#include "porous.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stagbox {

enum class DofType { ff_pressure, ff_velocity, pm_pressure };

//! Global numbering: free-flow cell pressures, free-flow face velocities that
//! are not pinned by a boundary condition, porous vertex pressures.
class DofLayout {
public:
    DofLayout() = default;
    DofLayout(const FreeFlowModel& ff, const PorousModel& pm);

    int size() const { return static_cast<int>(kind_.size()); }
    int num_ff_pressure() const { return n_cell_; }
    int num_ff_velocity() const { return n_face_; }
    int num_pm_pressure() const { return n_vertex_; }
    int ff_velocity_offset() const { return n_cell_; }
    int pm_offset() const { return n_cell_ + n_face_; }

    const std::vector<int>& cell_dof() const { return cell_dof_; }
    const std::vector<int>& face_dof() const { return face_dof_; }
    const std::vector<int>& vertex_dof() const { return vertex_dof_; }

    DofType type(int k) const { return kind_[k]; }
    //! Cell, face or vertex index of a global unknown.
    int entity(int k) const { return entity_[k]; }
    std::string describe(int k) const;

private:
    int n_cell_ = 0, n_face_ = 0, n_vertex_ = 0;
    std::vector<int> cell_dof_, face_dof_, vertex_dof_;
    std::vector<DofType> kind_;
    std::vector<int> entity_;
};

//! Mass bookkeeping of a state: outflows across outer boundaries, integrated
//! sources and the sum of paired interface fluxes.
struct MassBalance {
    double interface_imbalance = 0.0;
    double interface_scale = 0.0; // sum of |facet flux|, the magnitude the imbalance is measured against
    double ff_outflow = 0.0, pm_outflow = 0.0;
    double ff_source = 0.0, pm_source = 0.0;

    //! Outflow minus sources over both subdomains.
    double global() const { return ff_outflow + pm_outflow - ff_source - pm_source; }
    //! global() relative to the largest term, or absolute below unit magnitude.
    double relative() const;
};

//! Monolithic stationary free-flow / porous-medium problem.
class CoupledProblem {
public:
    CoupledProblem(std::shared_ptr<const StaggeredGrid> ff_grid, FfBoundarySpec ff_spec, FreeFlowParams ff_params,
                   std::shared_ptr<const BoxMesh> pm_mesh, PmBoundarySpec pm_spec, PorousParams pm_params,
                   const std::vector<Segment>& interface, ProjectionKind kind, double alpha_bjs);

    CoupledProblem(const CoupledProblem&) = delete;
    CoupledProblem& operator=(const CoupledProblem&) = delete;

    const StaggeredGrid& ff_grid() const { return *ff_grid_; }
    const BoxMesh& pm_mesh() const { return *pm_mesh_; }
    const DualTopology& dual() const { return *dual_; }
    const FreeFlowModel& freeflow() const { return *ff_; }
    const PorousModel& porous() const { return *pm_; }
    const CouplingContext& coupling() const { return *coupling_; }
    const DofLayout& layout() const { return layout_; }
    int size() const { return layout_.size(); }

    template<class T>
    void residual(std::span<const T> x, std::span<T> r) const;
    std::vector<double> residual(std::span<const double> x) const;

    //! Unknowns at their exact values for given fields; used for consistency checks.
    std::vector<double> interpolate(const VectorField& v_ff, const ScalarField& p_ff, const ScalarField& p_pm) const;

    //! Free-flow pressure per cell and velocity per face (pinned values included).
    std::vector<double> ff_cell_pressures(std::span<const double> x) const;
    std::vector<double> ff_face_velocities(std::span<const double> x) const;
    std::vector<double> pm_pressures(std::span<const double> x) const;

    MassBalance mass_balance(std::span<const double> x) const;

private:
    std::shared_ptr<const StaggeredGrid> ff_grid_;
    std::shared_ptr<const BoxMesh> pm_mesh_;
    std::unique_ptr<DualTopology> dual_;
    std::unique_ptr<FreeFlowModel> ff_;
    std::unique_ptr<PorousModel> pm_;
    std::unique_ptr<CouplingContext> coupling_;
    DofLayout layout_;
};

} // namespace stagbox
