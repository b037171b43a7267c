#pragma once

#include "geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace stagbox {

//! Face of the staggered grid in local coordinates: normal direction d,
//! node index along d and cell index along the tangential direction.
struct FaceIndex {
    int d = 0;
    int node = 0;
    int cell = 0;
};

//! Axis aligned uniform grid of a rectangle. Pressures live at cell centers,
//! velocity component d on the faces normal to e_d. Cells may be deactivated
//! (obstacles); faces adjacent to at least one active cell exist.
class StaggeredGrid {
public:
    StaggeredGrid() = default;
    StaggeredGrid(const Rect& domain, int nx, int ny);

    const Rect& domain() const { return domain_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int n(int d) const { return d == 0 ? nx_ : ny_; }
    double h(int d) const { return d == 0 ? dx_ : dy_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }

    int num_cells() const { return nx_ * ny_; }
    int num_faces() const { return (nx_ + 1) * ny_ + nx_ * (ny_ + 1); }
    int num_active_cells() const { return num_active_; }

    int cell_id(int i, int j) const { return j * nx_ + i; }
    //! Cell with index kd along direction d and kt along the other direction.
    int cell_id(int d, int kd, int kt) const { return d == 0 ? cell_id(kd, kt) : cell_id(kt, kd); }
    int cell_i(int c) const { return c % nx_; }
    int cell_j(int c) const { return c / nx_; }
    bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }
    //! False for cells outside the index range.
    bool active(int i, int j) const { return in_range(i, j) && active_[cell_id(i, j)]; }
    bool active(int d, int kd, int kt) const { return d == 0 ? active(kd, kt) : active(kt, kd); }
    bool active(int c) const { return active_[c]; }
    Vec2 cell_center(int c) const;
    double cell_measure() const { return dx_ * dy_; }
    Rect cell_rect(int c) const;

    int face_id(int d, int node, int cell) const
    {
        return d == 0 ? cell * (nx_ + 1) + node : (nx_ + 1) * ny_ + node * nx_ + cell;
    }
    int face_id(const FaceIndex& f) const { return face_id(f.d, f.node, f.cell); }
    FaceIndex face_index(int f) const;
    bool face_in_range(int d, int node, int cell) const
    {
        return node >= 0 && node <= n(d) && cell >= 0 && cell < n(1 - d);
    }
    //! A face exists if at least one adjacent cell is active.
    bool face_exists(int f) const { return face_state_[f] != 0; }
    bool face_exists(int d, int node, int cell) const
    {
        return face_in_range(d, node, cell) && face_exists(face_id(d, node, cell));
    }
    bool is_boundary_face(int f) const { return face_state_[f] == 1; }
    //! Outward direction (+1/-1 along e_d) for boundary faces, +1 for interior faces.
    int outward_sign(int f) const { return face_sign_[f]; }
    Vec2 face_center(int f) const;
    Vec2 face_normal(int f) const { return unit_axis(face_index(f).d) * face_sign_[f]; }
    double face_measure(int f) const { return h(1 - face_index(f).d); }
    //! Dual control volume of the face: full cell width across, half cells along d.
    Rect face_dual_rect(int f) const;

    //! Assigns boundary markers from a function of face center and outward normal.
    void assign_markers(const std::function<std::string(const Vec2&, const Vec2&)>& marker_of);
    const std::string& marker(int f) const;
    const std::vector<std::string>& marker_names() const { return marker_names_; }
    int marker_id(int f) const { return face_marker_[f]; }
    std::vector<int> boundary_faces() const;
    std::vector<int> faces_with_marker(const std::string& name) const;

    double active_measure() const { return num_active_ * cell_measure(); }

private:
    friend StaggeredGrid build_structured_grid(const Rect&, int, int, const std::function<bool(const Vec2&)>&);
    void update_faces();

    Rect domain_;
    int nx_ = 0, ny_ = 0;
    double dx_ = 0.0, dy_ = 0.0;
    int num_active_ = 0;
    std::vector<char> active_;
    std::vector<char> face_state_; // 0 missing, 1 boundary, 2 interior
    std::vector<signed char> face_sign_;
    std::vector<int> face_marker_;
    std::vector<std::string> marker_names_;
};

//! Uniform grid; cells whose center satisfies `inactive` are removed.
StaggeredGrid build_structured_grid(const Rect& domain, int nx, int ny,
                                    const std::function<bool(const Vec2&)>& inactive = {});

//! Default markers: left, right, bottom, top for the outer rectangle, obstacle otherwise.
std::string default_ff_marker(const Rect& domain, const Vec2& center, const Vec2& normal);

} // namespace stagbox
