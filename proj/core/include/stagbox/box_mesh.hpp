#pragma once

#include "geometry.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace stagbox {

//! Triangle (3 corners) or quadrilateral (4 corners), counter-clockwise.
struct BoxElement {
    std::array<int, 4> v{-1, -1, -1, -1};
    int num_corners = 0;
    Mat2 K = Mat2::identity();

    bool is_triangle() const { return num_corners == 3; }
};

struct BoundaryEdge {
    int v0 = -1, v1 = -1;    // in counter-clockwise order of the owning element
    int element = -1;
    int local_edge = -1;     // edge k joins local corners k and k+1
    std::string marker;
};

//! Unstructured primary mesh of the porous-medium subdomain.
class BoxMesh {
public:
    BoxMesh() = default;
    BoxMesh(std::vector<Vec2> vertices, std::vector<BoxElement> elements);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_elements() const { return static_cast<int>(elements_.size()); }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    const Vec2& vertex(int v) const { return vertices_[v]; }
    const std::vector<BoxElement>& elements() const { return elements_; }
    const BoxElement& element(int e) const { return elements_[e]; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }

    double element_area(int e) const;
    //! Vertex average; equals the image of the reference center for quadrilaterals.
    Vec2 element_center(int e) const;
    Vec2 corner(int e, int k) const { return vertices_[elements_[e].v[k]]; }
    double total_area() const;

    //! Sets K_E := K(x_E) for every element. Non-SPD tensors raise ParameterError.
    void set_permeability(const std::function<Mat2(const Vec2&)>& K);
    void set_element_permeability(int e, const Mat2& K);

    //! Marks boundary edges from a function of edge midpoint and outward normal.
    void assign_markers(const std::function<std::string(const Vec2&, const Vec2&)>& marker_of);
    void set_boundary_marker(int edge, std::string marker) { boundary_[edge].marker = std::move(marker); }

    //! Checks element orientation, boundary edge ownership and vertex usage.
    void validate() const;

    //! Renumbers vertices: new index of old vertex v is perm[v].
    BoxMesh renumbered(const std::vector<int>& perm) const;

private:
    void build_boundary();

    std::vector<Vec2> vertices_;
    std::vector<BoxElement> elements_;
    std::vector<BoundaryEdge> boundary_;
};

//! Plain-text exchange format: header line, vertex block, element block,
//! boundary-marker block.
void write_mesh(std::ostream& os, const BoxMesh& mesh);
BoxMesh read_mesh(std::istream& is);
void write_mesh_file(const std::string& path, const BoxMesh& mesh);
BoxMesh read_mesh_file(const std::string& path);

//! CSV of vertex positions with an optional per-vertex field.
void write_vertices_csv(std::ostream& os, const BoxMesh& mesh, const std::vector<double>* field = nullptr,
                        const std::string& field_name = "value");
//! CSV of element connectivity.
void write_elements_csv(std::ostream& os, const BoxMesh& mesh);

} // namespace stagbox
