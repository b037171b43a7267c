#include "random_mesh.hpp"

#include <stagbox/dual_topology.hpp>
#include <stagbox/errors.hpp>
#include <stagbox/grid_generators.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace stagbox;

namespace {

double shoelace(const std::vector<Vec2>& p)
{
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const Vec2& a = p[k];
        const Vec2& b = p[(k + 1) % p.size()];
        s += (a.x - b.x) * (a.y + b.y);
    }
    return 0.5 * s;
}

Vec2 random_point_in(const BoxMesh& mesh, int e, std::mt19937& rng)
{
    // convex combination of the corners stays inside a convex element
    std::uniform_real_distribution<double> u(0.05, 1.0);
    const auto& el = mesh.element(e);
    double w[4], sum = 0.0;
    for (int k = 0; k < el.num_corners; ++k)
        sum += w[k] = u(rng);
    Vec2 p;
    for (int k = 0; k < el.num_corners; ++k)
        p += mesh.corner(e, k) * (w[k] / sum);
    return p;
}

} // namespace

class BasisInvariants : public ::testing::TestWithParam<bool> {};

TEST_P(BasisInvariants, RandomMeshes)
{
    const bool tri = GetParam();
    for (unsigned seed = 0; seed < 100; ++seed) {
        const auto mesh = test::random_mesh(seed, 4, 3, tri);
        std::mt19937 rng(seed + 1000);
        const Vec2 grad_lin{0.7, -1.3};
        const auto lin = [&](const Vec2& p) { return 0.2 + dot(grad_lin, p); };
        for (int e = 0; e < mesh.num_elements(); ++e) {
            const auto& el = mesh.element(e);
            for (int trial = 0; trial < 3; ++trial) {
                const Vec2 p = random_point_in(mesh, e, rng);
                const auto b = eval_basis(mesh, e, p);
                double sum = 0.0, interp = 0.0;
                Vec2 gsum, ginterp;
                for (int k = 0; k < el.num_corners; ++k) {
                    sum += b.value[k];
                    gsum += b.grad[k];
                    interp += b.value[k] * lin(mesh.corner(e, k));
                    ginterp += b.grad[k] * lin(mesh.corner(e, k));
                }
                ASSERT_NEAR(sum, 1.0, 1e-12) << "seed " << seed;
                ASSERT_NEAR(gsum.x, 0.0, 1e-12);
                ASSERT_NEAR(gsum.y, 0.0, 1e-12);
                ASSERT_NEAR(interp, lin(p), 1e-12);
                ASSERT_NEAR(ginterp.x, grad_lin.x, 1e-11);
                ASSERT_NEAR(ginterp.y, grad_lin.y, 1e-11);
            }
            for (int j = 0; j < el.num_corners; ++j) {
                const auto b = eval_basis(mesh, e, mesh.corner(e, j));
                for (int k = 0; k < el.num_corners; ++k)
                    ASSERT_NEAR(b.value[k], j == k ? 1.0 : 0.0, 1e-12);
            }
        }
    }
}

TEST_P(BasisInvariants, ScvMeasuresPartitionElements)
{
    const bool tri = GetParam();
    for (unsigned seed = 0; seed < 100; ++seed) {
        const auto mesh = test::random_mesh(seed, 5, 4, tri);
        const DualTopology dual(mesh);
        std::vector<double> per_element(mesh.num_elements(), 0.0);
        for (const auto& scv : dual.scvs()) {
            const std::vector<Vec2> poly(scv.corners.begin(), scv.corners.end());
            ASSERT_NEAR(shoelace(poly), scv.measure, 1e-12);
            ASSERT_GT(scv.measure, 0.0);
            per_element[scv.element] += scv.measure;
        }
        double total = 0.0;
        for (int e = 0; e < mesh.num_elements(); ++e) {
            std::vector<Vec2> poly;
            for (int k = 0; k < mesh.element(e).num_corners; ++k)
                poly.push_back(mesh.corner(e, k));
            ASSERT_NEAR(per_element[e], shoelace(poly), 1e-12) << "seed " << seed << " element " << e;
            total += shoelace(poly);
        }
        double cv = 0.0;
        for (double m : dual.cv_measures())
            cv += m;
        ASSERT_NEAR(cv, 1.0, 1e-12);
        ASSERT_NEAR(total, 1.0, 1e-12);
    }
}

TEST_P(BasisInvariants, FacetsTileControlVolumeBoundaries)
{
    const bool tri = GetParam();
    for (unsigned seed = 0; seed < 100; ++seed) {
        const auto mesh = test::random_mesh(seed, 4, 4, tri);
        const DualTopology dual(mesh);
        // closed boundaries: sum of outward normal * length vanishes per control volume
        std::vector<Vec2> closure(mesh.num_vertices());
        for (const auto& f : dual.scvfs()) {
            ASSERT_NEAR(f.measure, norm(f.b - f.a), 1e-14);
            closure[f.vertex[0]] += f.normal * f.measure;
            closure[f.vertex[1]] -= f.normal * f.measure;
        }
        double perimeter = 0.0;
        for (const auto& bf : dual.boundary_subfaces()) {
            closure[bf.vertex] += bf.normal * bf.measure;
            perimeter += bf.measure;
        }
        for (const auto& c : closure) {
            ASSERT_NEAR(c.x, 0.0, 1e-12) << "seed " << seed;
            ASSERT_NEAR(c.y, 0.0, 1e-12);
        }
        ASSERT_NEAR(perimeter, 4.0, 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Elements, BasisInvariants, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "triangles" : "quadrilaterals"; });

TEST(BoxMesh, RejectsClockwiseElement)
{
    BoxElement e;
    e.v = {0, 2, 1, -1};
    e.num_corners = 3;
    EXPECT_THROW(BoxMesh({{0, 0}, {1, 0}, {0, 1}}, {e}), MeshError);
}

TEST(BoxMesh, TextRoundTrip)
{
    auto mesh = test::random_mesh(7, 3, 2, true);
    mesh.set_permeability([](const Vec2& p) { return Mat2{1.0 + p.x, 0.1, 0.1, 2.0}; });
    std::stringstream ss;
    write_mesh(ss, mesh);
    const auto back = read_mesh(ss);
    ASSERT_EQ(back.num_vertices(), mesh.num_vertices());
    ASSERT_EQ(back.num_elements(), mesh.num_elements());
    for (int v = 0; v < mesh.num_vertices(); ++v)
        EXPECT_EQ(back.vertex(v), mesh.vertex(v));
    for (int e = 0; e < mesh.num_elements(); ++e) {
        EXPECT_EQ(back.element(e).v, mesh.element(e).v);
        EXPECT_EQ(back.element(e).K, mesh.element(e).K);
    }
    ASSERT_EQ(back.boundary_edges().size(), mesh.boundary_edges().size());
    for (std::size_t k = 0; k < mesh.boundary_edges().size(); ++k)
        EXPECT_EQ(back.boundary_edges()[k].marker, mesh.boundary_edges()[k].marker);
}

TEST(GridGenerators, InterfaceParallelDistribution)
{
    const auto c = pm_distribution(PmGridKind::conforming, 0.0, 1.0, 0.1, 1.0, true);
    ASSERT_EQ(c.size(), 11u);
    for (std::size_t k = 0; k < c.size(); ++k)
        EXPECT_NEAR(c[k], 0.1 * k, 1e-14);

    const auto b = pm_distribution(PmGridKind::box_conforming, 0.0, 1.0, 0.1, 1.0, true);
    // vertices at the free-flow face centers plus both ends
    ASSERT_EQ(b.size(), 12u);
    EXPECT_NEAR(b[1], 0.05, 1e-14);
    EXPECT_NEAR(b[10], 0.95, 1e-14);

    const auto s = pm_distribution(PmGridKind::simplex, 0.0, 1.0, 0.1, 0.95, true);
    EXPECT_DOUBLE_EQ(s.front(), 0.0);
    EXPECT_DOUBLE_EQ(s.back(), 1.0);
    for (std::size_t k = 1; k < s.size(); ++k)
        EXPECT_GT(s[k], s[k - 1]);
}

TEST(GridGenerators, SimplexMeshCoversDomain)
{
    PmGridSpec spec;
    spec.kind = PmGridKind::simplex;
    spec.domain = {0.0, 0.0, 1.0, 0.5};
    spec.hx = spec.hy = 0.1;
    spec.interface_factor = 0.9;
    const auto mesh = generate_pm_grid(spec);
    mesh.validate();
    EXPECT_NEAR(mesh.total_area(), 0.5, 1e-12);
    for (const auto& el : mesh.elements())
        EXPECT_EQ(el.num_corners, 3);
}
