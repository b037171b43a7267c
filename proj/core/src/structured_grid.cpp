#include "stagbox/structured_grid.hpp"

#include "stagbox/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stagbox {

StaggeredGrid::StaggeredGrid(const Rect& domain, int nx, int ny)
: domain_(domain), nx_(nx), ny_(ny)
{
    if (nx < 1 || ny < 1)
        throw InvalidInput("structured grid needs at least one cell per direction");
    if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
        throw InvalidInput("structured grid domain has non-positive extent");
    dx_ = domain.width() / nx;
    dy_ = domain.height() / ny;
    active_.assign(static_cast<std::size_t>(nx) * ny, 1);
    num_active_ = nx * ny;
    update_faces();
}

Vec2 StaggeredGrid::cell_center(int c) const
{
    return {domain_.x0 + (cell_i(c) + 0.5) * dx_, domain_.y0 + (cell_j(c) + 0.5) * dy_};
}

Rect StaggeredGrid::cell_rect(int c) const
{
    const double x0 = domain_.x0 + cell_i(c) * dx_;
    const double y0 = domain_.y0 + cell_j(c) * dy_;
    return {x0, y0, x0 + dx_, y0 + dy_};
}

FaceIndex StaggeredGrid::face_index(int f) const
{
    const int nxf = (nx_ + 1) * ny_;
    if (f < nxf)
        return {0, f % (nx_ + 1), f / (nx_ + 1)};
    f -= nxf;
    return {1, f / nx_, f % nx_};
}

Vec2 StaggeredGrid::face_center(int f) const
{
    const auto [d, node, cell] = face_index(f);
    if (d == 0)
        return {domain_.x0 + node * dx_, domain_.y0 + (cell + 0.5) * dy_};
    return {domain_.x0 + (cell + 0.5) * dx_, domain_.y0 + node * dy_};
}

Rect StaggeredGrid::face_dual_rect(int f) const
{
    const auto [d, node, cell] = face_index(f);
    const Vec2 c = face_center(f);
    const double hd = h(d);
    const double ht = h(1 - d);
    const double lo = active(d, node - 1, cell) ? 0.5 * hd : 0.0;
    const double hi = active(d, node, cell) ? 0.5 * hd : 0.0;
    if (d == 0)
        return {c.x - lo, c.y - 0.5 * ht, c.x + hi, c.y + 0.5 * ht};
    return {c.x - 0.5 * ht, c.y - lo, c.x + 0.5 * ht, c.y + hi};
}

void StaggeredGrid::update_faces()
{
    const int nf = num_faces();
    face_state_.assign(nf, 0);
    face_sign_.assign(nf, 1);
    face_marker_.assign(nf, -1);
    for (int f = 0; f < nf; ++f) {
        const auto [d, node, cell] = face_index(f);
        const bool lo = active(d, node - 1, cell);
        const bool hi = active(d, node, cell);
        face_state_[f] = static_cast<char>(int(lo) + int(hi));
        if (lo != hi)
            face_sign_[f] = lo ? 1 : -1;
    }
}

void StaggeredGrid::assign_markers(const std::function<std::string(const Vec2&, const Vec2&)>& marker_of)
{
    marker_names_.clear();
    std::fill(face_marker_.begin(), face_marker_.end(), -1);
    for (int f = 0; f < num_faces(); ++f) {
        if (!is_boundary_face(f))
            continue;
        const std::string name = marker_of(face_center(f), face_normal(f));
        auto it = std::find(marker_names_.begin(), marker_names_.end(), name);
        if (it == marker_names_.end()) {
            marker_names_.push_back(name);
            it = marker_names_.end() - 1;
        }
        face_marker_[f] = static_cast<int>(it - marker_names_.begin());
    }
}

const std::string& StaggeredGrid::marker(int f) const
{
    static const std::string none;
    const int m = face_marker_[f];
    return m < 0 ? none : marker_names_[m];
}

std::vector<int> StaggeredGrid::boundary_faces() const
{
    std::vector<int> out;
    for (int f = 0; f < num_faces(); ++f)
        if (is_boundary_face(f))
            out.push_back(f);
    return out;
}

std::vector<int> StaggeredGrid::faces_with_marker(const std::string& name) const
{
    std::vector<int> out;
    for (int f = 0; f < num_faces(); ++f)
        if (is_boundary_face(f) && marker(f) == name)
            out.push_back(f);
    return out;
}

StaggeredGrid build_structured_grid(const Rect& domain, int nx, int ny,
                                    const std::function<bool(const Vec2&)>& inactive)
{
    StaggeredGrid grid(domain, nx, ny);
    if (inactive) {
        for (int c = 0; c < grid.num_cells(); ++c)
            if (inactive(grid.cell_center(c))) {
                grid.active_[c] = 0;
                --grid.num_active_;
            }
        if (grid.num_active_ == 0)
            throw InvalidInput("structured grid has no active cells");
        grid.update_faces();
    }
    grid.assign_markers([&](const Vec2& c, const Vec2& n) { return default_ff_marker(domain, c, n); });
    return grid;
}

std::string default_ff_marker(const Rect& domain, const Vec2& center, const Vec2& normal)
{
    const double tol = 1e-10 * std::max(domain.width(), domain.height());
    if (normal.x < 0 && std::abs(center.x - domain.x0) < tol) return "left";
    if (normal.x > 0 && std::abs(center.x - domain.x1) < tol) return "right";
    if (normal.y < 0 && std::abs(center.y - domain.y0) < tol) return "bottom";
    if (normal.y > 0 && std::abs(center.y - domain.y1) < tol) return "top";
    return "obstacle";
}

} // namespace stagbox
