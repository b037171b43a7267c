#include <stagbox/errors.hpp>
#include <stagbox/freeflow.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace stagbox;

namespace {

// Staggered model on an all-Dirichlet box; unknowns are cell pressures, then free faces.
struct Box {
    StaggeredGrid grid;
    std::unique_ptr<FreeFlowModel> model;
    std::vector<int> cell_dof, face_dof;
    int size = 0;
};

Box make_box(int nx, int ny, const VectorField& v, FreeFlowParams params)
{
    Box b;
    b.grid = build_structured_grid({0.0, 0.0, 1.0, 0.5}, nx, ny);
    FfBoundarySpec spec;
    for (const char* m : {"left", "right", "bottom", "top"})
        spec.by_marker[m] = FfBoundaryCondition::dirichlet(v);
    b.model = std::make_unique<FreeFlowModel>(b.grid, spec, std::move(params));
    b.cell_dof.assign(b.grid.num_cells(), -1);
    b.face_dof.assign(b.grid.num_faces(), -1);
    for (int c = 0; c < b.grid.num_cells(); ++c)
        b.cell_dof[c] = b.size++;
    for (int f = 0; f < b.grid.num_faces(); ++f)
        if (!b.model->is_pinned(f))
            b.face_dof[f] = b.size++;
    b.model->set_dof_maps(b.cell_dof, b.face_dof);
    return b;
}

std::vector<double> interpolate(const Box& b, const VectorField& v, const ScalarField& p)
{
    std::vector<double> x(b.size);
    for (int c = 0; c < b.grid.num_cells(); ++c)
        x[b.cell_dof[c]] = p(b.grid.cell_center(c));
    for (int f = 0; f < b.grid.num_faces(); ++f)
        if (b.face_dof[f] >= 0)
            x[b.face_dof[f]] = v(b.grid.face_center(f))[b.grid.face_index(f).d];
    return x;
}

} // namespace

TEST(FreeFlow, DivergenceMatchesSourceForLinearField)
{
    const auto v = [](const Vec2& p) { return Vec2{1.0 + 2.0 * p.x - p.y, 0.5 + 3.0 * p.x - 0.7 * p.y}; };
    FreeFlowParams params;
    params.mass_source = [](const Vec2&) { return 2.0 - 0.7; };
    params.force = [](const Vec2&) { return Vec2{}; };
    params.enable_inertia = false;
    auto b = make_box(6, 4, v, params);
    const auto x = interpolate(b, v, [](const Vec2&) { return 0.0; });
    for (int c = 0; c < b.grid.num_cells(); ++c) {
        // divergence theorem: face fluxes of a linear field are exact
        double flux = 0.0;
        for (int d = 0; d < 2; ++d) {
            const int i = d == 0 ? b.grid.cell_i(c) : b.grid.cell_j(c);
            const int t = d == 0 ? b.grid.cell_j(c) : b.grid.cell_i(c);
            const int lo = b.grid.face_id(d, i, t), hi = b.grid.face_id(d, i + 1, t);
            flux += (v(b.grid.face_center(hi))[d] - v(b.grid.face_center(lo))[d]) * b.grid.face_measure(lo);
        }
        EXPECT_NEAR(flux, 1.3 * b.grid.cell_measure(), 1e-14);
        EXPECT_NEAR(b.model->mass_residual<double>(c, x, {}), 0.0, 1e-14) << "cell " << c;
    }
}

TEST(FreeFlow, StokesLinearSolutionIsDiscreteSolution)
{
    // linear, divergence-free velocity with a linear pressure balanced by a constant force
    const auto v = [](const Vec2& p) { return Vec2{1.0 + 2.0 * p.x - p.y, 0.5 + 3.0 * p.x - 2.0 * p.y}; };
    const auto p = [](const Vec2& q) { return 0.3 - 1.5 * q.x + 4.0 * q.y; };
    FreeFlowParams params;
    params.mu = 0.7;
    params.enable_inertia = false;
    params.force = [](const Vec2&) { return Vec2{-1.5, 4.0}; };
    auto b = make_box(7, 5, v, params);
    const auto x = interpolate(b, v, p);
    std::vector<double> r(b.size);
    b.model->residual<double>(x, {}, r);
    for (int k = 0; k < b.size; ++k)
        EXPECT_NEAR(r[k], 0.0, 1e-13) << "dof " << k;
}

TEST(FreeFlow, UniformFlowSolvesNavierStokes)
{
    // constant velocity: inertia and viscous terms vanish for any upwind weight
    const auto v = [](const Vec2&) { return Vec2{0.8, -0.3}; };
    for (double zeta : {0.5, 0.75, 1.0}) {
        FreeFlowParams params;
        params.zeta = zeta;
        params.rho = 1.3;
        auto b = make_box(5, 5, v, params);
        const auto x = interpolate(b, v, [](const Vec2&) { return 2.0; });
        std::vector<double> r(b.size);
        b.model->residual<double>(x, {}, r);
        for (double ri : r)
            EXPECT_NEAR(ri, 0.0, 1e-13);
    }
}

TEST(FreeFlow, PinnedFacesCarryBoundaryValues)
{
    const auto v = [](const Vec2& p) { return Vec2{p.y, -p.x}; };
    auto b = make_box(4, 2, v, {});
    for (int f = 0; f < b.grid.num_faces(); ++f) {
        if (!b.grid.is_boundary_face(f))
            continue;
        ASSERT_TRUE(b.model->is_pinned(f));
        EXPECT_DOUBLE_EQ(b.model->pinned_value(f), v(b.grid.face_center(f))[b.grid.face_index(f).d]);
    }
}

TEST(FreeFlow, MissingMarkerThrows)
{
    const auto grid = build_structured_grid({0, 0, 1, 1}, 2, 2);
    FfBoundarySpec spec;
    spec.by_marker["left"] = FfBoundaryCondition::no_slip();
    EXPECT_THROW(FreeFlowModel(grid, spec, {}), ConfigurationError);
}

TEST(StaggeredGrid, ObstacleFacesAndMarkers)
{
    const auto grid =
        build_structured_grid({0, 0, 1, 1}, 4, 4, [](const Vec2& c) { return c.x > 0.5 && c.y > 0.5; });
    EXPECT_EQ(grid.num_active_cells(), 12);
    int obstacle = 0;
    for (int f : grid.boundary_faces())
        if (grid.marker(f) == "obstacle") {
            ++obstacle;
            const Vec2 n = grid.face_normal(f);
            const Vec2 c = grid.face_center(f);
            // outward normals point into the removed quarter
            EXPECT_TRUE((n.x > 0 && c.x == 0.5) || (n.y > 0 && c.y == 0.5));
        }
    EXPECT_EQ(obstacle, 4);
    EXPECT_NEAR(grid.active_measure(), 0.75, 1e-15);
}
