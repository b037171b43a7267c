#include "stagbox/box_mesh.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace stagbox {

BoxMesh::BoxMesh(std::vector<Vec2> vertices, std::vector<BoxElement> elements)
: vertices_(std::move(vertices)), elements_(std::move(elements))
{
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        const auto& el = elements_[e];
        if (el.num_corners != 3 && el.num_corners != 4)
            throw MeshError(fmt::format("element {} has {} corners", e, el.num_corners));
        for (int k = 0; k < el.num_corners; ++k)
            if (el.v[k] < 0 || el.v[k] >= num_vertices())
                throw MeshError(fmt::format("element {} references unknown vertex {}", e, el.v[k]));
        if (element_area(static_cast<int>(e)) <= 0.0)
            throw MeshError(fmt::format("element {} is degenerate or clockwise (area {})", e,
                                        element_area(static_cast<int>(e))));
    }
    build_boundary();
}

double BoxMesh::element_area(int e) const
{
    const auto& el = elements_[e];
    std::array<Vec2, 4> p;
    for (int k = 0; k < el.num_corners; ++k)
        p[k] = vertices_[el.v[k]];
    double a = 0.0;
    for (int k = 0; k < el.num_corners; ++k)
        a += cross(p[k], p[(k + 1) % el.num_corners]);
    return 0.5 * a;
}

Vec2 BoxMesh::element_center(int e) const
{
    const auto& el = elements_[e];
    Vec2 c;
    for (int k = 0; k < el.num_corners; ++k)
        c += vertices_[el.v[k]];
    return c * (1.0 / el.num_corners);
}

double BoxMesh::total_area() const
{
    double a = 0.0;
    for (int e = 0; e < num_elements(); ++e)
        a += element_area(e);
    return a;
}

void BoxMesh::set_permeability(const std::function<Mat2(const Vec2&)>& K)
{
    for (int e = 0; e < num_elements(); ++e)
        set_element_permeability(e, K(element_center(e)));
}

void BoxMesh::set_element_permeability(int e, const Mat2& K)
{
    if (!K.is_spd())
        throw ParameterError(fmt::format("permeability of element {} is not symmetric positive definite", e));
    elements_[e].K = K;
}

void BoxMesh::build_boundary()
{
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    for (int e = 0; e < num_elements(); ++e) {
        const auto& el = elements_[e];
        for (int k = 0; k < el.num_corners; ++k) {
            const int a = el.v[k], b = el.v[(k + 1) % el.num_corners];
            edges[{std::min(a, b), std::max(a, b)}].emplace_back(e, k);
        }
    }
    std::map<std::pair<int, int>, std::string> old_markers;
    for (const auto& be : boundary_)
        old_markers[{std::min(be.v0, be.v1), std::max(be.v0, be.v1)}] = be.marker;
    boundary_.clear();
    for (const auto& [key, owners] : edges) {
        if (owners.size() > 2)
            throw MeshError(fmt::format("edge ({}, {}) is shared by {} elements", key.first, key.second,
                                        owners.size()));
        if (owners.size() == 1) {
            const auto [e, k] = owners.front();
            const auto& el = elements_[e];
            BoundaryEdge be{el.v[k], el.v[(k + 1) % el.num_corners], e, k, {}};
            if (auto it = old_markers.find(key); it != old_markers.end())
                be.marker = it->second;
            boundary_.push_back(be);
        }
    }
}

void BoxMesh::assign_markers(const std::function<std::string(const Vec2&, const Vec2&)>& marker_of)
{
    for (auto& be : boundary_) {
        const Segment s{vertices_[be.v0], vertices_[be.v1]};
        be.marker = marker_of(s.midpoint(), right_normal(s.direction()));
    }
}

void BoxMesh::validate() const
{
    std::vector<char> used(vertices_.size(), 0);
    for (int e = 0; e < num_elements(); ++e) {
        if (element_area(e) <= 0.0)
            throw MeshError(fmt::format("element {} has non-positive area", e));
        for (int k = 0; k < elements_[e].num_corners; ++k)
            used[elements_[e].v[k]] = 1;
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v])
            throw MeshError(fmt::format("vertex {} is not a corner of any element", v));
    std::map<std::pair<int, int>, int> count;
    for (int e = 0; e < num_elements(); ++e) {
        const auto& el = elements_[e];
        for (int k = 0; k < el.num_corners; ++k) {
            const int a = el.v[k], b = el.v[(k + 1) % el.num_corners];
            ++count[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (const auto& be : boundary_) {
        const auto it = count.find({std::min(be.v0, be.v1), std::max(be.v0, be.v1)});
        if (it == count.end() || it->second != 1)
            throw MeshError(fmt::format("boundary edge ({}, {}) does not belong to exactly one element", be.v0,
                                        be.v1));
    }
}

BoxMesh BoxMesh::renumbered(const std::vector<int>& perm) const
{
    std::vector<Vec2> verts(vertices_.size());
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        verts[perm[v]] = vertices_[v];
    auto elems = elements_;
    for (auto& el : elems)
        for (int k = 0; k < el.num_corners; ++k)
            el.v[k] = perm[el.v[k]];
    BoxMesh out(std::move(verts), std::move(elems));
    for (auto& be : out.boundary_)
        for (const auto& old : boundary_)
            if (perm[old.v0] == be.v0 && perm[old.v1] == be.v1)
                be.marker = old.marker;
    return out;
}

void write_mesh(std::ostream& os, const BoxMesh& mesh)
{
    fmt::print(os, "stagbox-mesh 1\n");
    fmt::print(os, "vertices {}\n", mesh.num_vertices());
    for (const auto& p : mesh.vertices())
        fmt::print(os, "{} {}\n", p.x, p.y);
    fmt::print(os, "elements {}\n", mesh.num_elements());
    for (const auto& el : mesh.elements()) {
        fmt::print(os, "{}", el.num_corners);
        for (int k = 0; k < el.num_corners; ++k)
            fmt::print(os, " {}", el.v[k]);
        fmt::print(os, " {} {} {} {}\n", el.K.xx, el.K.xy, el.K.yx, el.K.yy);
    }
    fmt::print(os, "boundary {}\n", mesh.boundary_edges().size());
    for (const auto& be : mesh.boundary_edges())
        fmt::print(os, "{} {} {}\n", be.v0, be.v1, be.marker.empty() ? "-" : be.marker);
}

namespace {

void expect_keyword(std::istream& is, const std::string& word, std::size_t& count)
{
    std::string got;
    if (!(is >> got >> count) || got != word)
        throw MeshError(fmt::format("mesh file: expected '{} <count>'", word));
}

} // namespace

BoxMesh read_mesh(std::istream& is)
{
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "stagbox-mesh" || version != 1)
        throw MeshError("mesh file: missing 'stagbox-mesh 1' header");
    std::size_t n = 0;
    expect_keyword(is, "vertices", n);
    std::vector<Vec2> verts(n);
    for (auto& p : verts)
        if (!(is >> p.x >> p.y))
            throw MeshError("mesh file: truncated vertex block");
    expect_keyword(is, "elements", n);
    std::vector<BoxElement> elems(n);
    std::string line;
    std::getline(is, line);
    for (auto& el : elems) {
        if (!std::getline(is, line))
            throw MeshError("mesh file: truncated element block");
        std::istringstream ls(line);
        ls >> el.num_corners;
        if (el.num_corners != 3 && el.num_corners != 4)
            throw MeshError("mesh file: element lines start with 3 or 4");
        for (int k = 0; k < el.num_corners; ++k)
            if (!(ls >> el.v[k]))
                throw MeshError("mesh file: element line has too few corners");
        Mat2 K;
        if (ls >> K.xx >> K.xy >> K.yx >> K.yy)
            el.K = K;
    }
    BoxMesh mesh(std::move(verts), std::move(elems));
    expect_keyword(is, "boundary", n);
    std::map<std::pair<int, int>, std::string> markers;
    for (std::size_t k = 0; k < n; ++k) {
        int a = 0, b = 0;
        std::string m;
        if (!(is >> a >> b >> m))
            throw MeshError("mesh file: truncated boundary block");
        markers[{std::min(a, b), std::max(a, b)}] = m == "-" ? std::string{} : m;
    }
    for (int k = 0; k < static_cast<int>(mesh.boundary_edges().size()); ++k) {
        const auto& be = mesh.boundary_edges()[k];
        const auto it = markers.find({std::min(be.v0, be.v1), std::max(be.v0, be.v1)});
        if (it == markers.end())
            throw MeshError(fmt::format("mesh file: boundary edge ({}, {}) has no marker line", be.v0, be.v1));
        mesh.set_boundary_marker(k, it->second);
    }
    for (int e = 0; e < mesh.num_elements(); ++e)
        mesh.set_element_permeability(e, mesh.element(e).K);
    mesh.validate();
    return mesh;
}

void write_mesh_file(const std::string& path, const BoxMesh& mesh)
{
    std::ofstream os(path);
    if (!os)
        throw Error("cannot open " + path + " for writing");
    os.precision(17);
    write_mesh(os, mesh);
}

BoxMesh read_mesh_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw MeshError("cannot open mesh file " + path);
    return read_mesh(is);
}

void write_vertices_csv(std::ostream& os, const BoxMesh& mesh, const std::vector<double>* field,
                        const std::string& field_name)
{
    fmt::print(os, "id,x,y{}\n", field ? "," + field_name : std::string{});
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const auto& p = mesh.vertex(v);
        if (field)
            fmt::print(os, "{},{},{},{}\n", v, p.x, p.y, (*field)[v]);
        else
            fmt::print(os, "{},{},{}\n", v, p.x, p.y);
    }
}

void write_elements_csv(std::ostream& os, const BoxMesh& mesh)
{
    fmt::print(os, "id,n,v0,v1,v2,v3\n");
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        fmt::print(os, "{},{},{},{},{},{}\n", e, el.num_corners, el.v[0], el.v[1], el.v[2], el.v[3]);
    }
}

} // namespace stagbox
