#pragma once

#include "box_mesh.hpp"
#include "geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace stagbox {

//! Values and gradients of the element basis functions at one point.
struct BasisEval {
    std::array<double, 4> value{};
    std::array<Vec2, 4> grad{};
    int n = 0;
};

//! P1 basis on triangles, Q1 on quadrilaterals through the bilinear reference map.
//! Throws DomainError if the point lies outside the element.
BasisEval eval_basis(const BoxMesh& mesh, int element, const Vec2& point);

//! Reference coordinates of a point: barycentric (l1, l2) for triangles, (xi, eta) for quads.
Vec2 local_coordinates(const BoxMesh& mesh, int element, const Vec2& point);

struct SubControlVolume {
    int element = -1;
    int local = -1;
    int vertex = -1;
    double measure = 0.0;
    std::array<Vec2, 4> corners; // vertex, next edge midpoint, center, previous edge midpoint
    Vec2 centroid;
};

struct SubControlVolumeFace {
    int element = -1;
    std::array<int, 2> local{};  // local corners, ordered so that vertex[0] < vertex[1]
    std::array<int, 2> vertex{}; // global vertices; the normal points from vertex[0] to vertex[1]
    Vec2 a, b;                   // edge midpoint and element center
    Vec2 ip;
    Vec2 normal;
    double measure = 0.0;
    BasisEval basis;             // basis at ip
};

//! Half of a boundary edge, owned by one vertex.
struct BoundarySubFace {
    int vertex = -1;
    int element = -1;
    int edge = -1;               // index into BoxMesh::boundary_edges()
    Vec2 a, b;                   // vertex end first
    Vec2 normal;                 // outward
    double measure = 0.0;
    std::string marker;
};

class DualTopology {
public:
    DualTopology() = default;
    explicit DualTopology(const BoxMesh& mesh);

    const BoxMesh& mesh() const { return *mesh_; }
    const std::vector<SubControlVolume>& scvs() const { return scvs_; }
    const std::vector<SubControlVolumeFace>& scvfs() const { return scvfs_; }
    const std::vector<BoundarySubFace>& boundary_subfaces() const { return bfaces_; }

    //! Scvs of element e occupy [scv_begin(e), scv_begin(e+1)); same for scvfs.
    int scv_begin(int e) const { return scv_offset_[e]; }
    int scvf_begin(int e) const { return scvf_offset_[e]; }
    double cv_measure(int v) const { return cv_measure_[v]; }
    const std::vector<double>& cv_measures() const { return cv_measure_; }
    double total_measure() const;

private:
    const BoxMesh* mesh_ = nullptr;
    std::vector<SubControlVolume> scvs_;
    std::vector<SubControlVolumeFace> scvfs_;
    std::vector<BoundarySubFace> bfaces_;
    std::vector<int> scv_offset_, scvf_offset_;
    std::vector<double> cv_measure_;
};

} // namespace stagbox
