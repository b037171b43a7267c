#pragma once

#include "freeflow.hpp"
#include "interface.hpp"
#include "porous.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stagbox {

enum class ProjectionKind { l2, area_weighted };

std::string to_string(ProjectionKind kind);
ProjectionKind parse_projection_kind(const std::string& name);

//! Sparse row of projection weights: (porous vertex, weight) pairs.
using WeightRow = std::vector<std::pair<int, double>>;

//! Rows of Pi_sigma for every free-flow coupling face, in the order of `faces`.
struct ProjectionMatrix {
    std::vector<int> faces;
    std::vector<WeightRow> rows;
};

ProjectionMatrix projection_matrix(const StaggeredGrid& ff, const DualTopology& pm,
                                   const std::vector<InterfaceFacet>& facets, ProjectionKind kind);

//! Interface machinery between the free-flow and porous models.
class CouplingContext {
public:
    //! Sets the slip coefficients alpha / sqrt(t.K t) on the free-flow coupling faces.
    CouplingContext(FreeFlowModel& ff, const PorousModel& pm, std::vector<InterfaceFacet> facets,
                    ProjectionKind kind, double alpha_bjs);

    const std::vector<InterfaceFacet>& facets() const { return facets_; }
    ProjectionKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const ProjectionMatrix& projection() const { return proj_; }
    //! Row of Pi_sigma for a free-flow face; throws CouplingMapError if the face is not coupled.
    const WeightRow& weights(int ff_face) const;
    const std::vector<int>& facets_of_face(int ff_face) const { return face_facets_[ff_face]; }

    //! Pi_sigma applied to vertex values.
    double project(int ff_face, std::span<const double> vertex_values) const;

    //! Mass flux |gamma| rho_up v.n across a facet, positive out of the free flow.
    template<class T>
    T facet_flux(int k, std::span<const T> x) const;

    //! Fills traction and mass flux per ff face and porous inflow per vertex.
    template<class T>
    void evaluate(std::span<const T> x, std::span<T> traction, std::span<T> ff_mass_flux,
                  std::span<T> pm_flux) const;

    //! Sum over facets of free-flow plus porous contributions.
    double interface_imbalance(std::span<const double> x) const;
    //! Total mass flux from the free flow into the porous medium.
    double interface_flux(std::span<const double> x) const;

private:
    const FreeFlowModel* ff_;
    const PorousModel* pm_;
    std::vector<InterfaceFacet> facets_;
    ProjectionKind kind_;
    double alpha_;
    ProjectionMatrix proj_;
    std::vector<int> face_row_;
    std::vector<std::vector<int>> face_facets_;
    std::vector<double> facet_sign_;
};

} // namespace stagbox
