#pragma once

#include "box_mesh.hpp"
#include "geometry.hpp"

#include <string>
#include <vector>

namespace stagbox {

enum class PmGridKind { conforming, box_conforming, simplex };

std::string to_string(PmGridKind kind);
PmGridKind parse_pm_grid_kind(const std::string& name);

//! Vertex coordinates along one direction of length L = hi - lo, given the
//! free-flow spacing h. Interface-parallel directions of box-conforming and
//! simplex grids start and end with a half-spacing edge; the remaining edges
//! are uniform with length close to f * h.
std::vector<double> pm_distribution(PmGridKind kind, double lo, double hi, double h, double interface_factor,
                                    bool interface_parallel);

struct PmGridSpec {
    PmGridKind kind = PmGridKind::conforming;
    Rect domain;
    double hx = 0.1, hy = 0.1;       // free-flow spacings
    double interface_factor = 1.0;   // f_gamma
    bool interface_along_x = true;   // a horizontal side of the domain is an interface
    bool interface_along_y = false;  // a vertical side of the domain is an interface
};

//! Tensor-product quadrilateral mesh, split into triangles for the simplex kind.
//! Boundary edges receive the default markers left/right/bottom/top.
BoxMesh generate_pm_grid(const PmGridSpec& spec);

std::string default_pm_marker(const Rect& domain, const Vec2& midpoint, const Vec2& normal);

} // namespace stagbox
