#include "random_mesh.hpp"

#include <stagbox/errors.hpp>
#include <stagbox/porous.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace stagbox;

namespace {

double bisect_speed(double d, double beta)
{
    double lo = 0.0, hi = d;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (mid * (1.0 + beta * mid) > d ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Fixture {
    BoxMesh mesh;
    std::unique_ptr<DualTopology> dual;
    std::unique_ptr<PorousModel> model;
};

Fixture make_model(unsigned seed, bool tri, const Mat2& K, PorousParams params, const ScalarField& p_boundary)
{
    Fixture f;
    f.mesh = test::random_mesh(seed, 5, 4, tri);
    f.mesh.set_permeability([&](const Vec2&) { return K; });
    f.mesh.assign_markers([](const Vec2&, const Vec2&) { return std::string("outer"); });
    f.dual = std::make_unique<DualTopology>(f.mesh);
    PmBoundarySpec spec;
    spec.by_marker["outer"] = PmBoundaryCondition::dirichlet(p_boundary);
    f.model = std::make_unique<PorousModel>(*f.dual, spec, std::move(params));
    std::vector<int> dof(f.mesh.num_vertices());
    std::iota(dof.begin(), dof.end(), 0);
    f.model->set_dof_map(dof);
    return f;
}

} // namespace

TEST(Forchheimer, SpeedMatchesBisection)
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> logd(-8.0, 4.0), logb(-6.0, 6.0);
    for (int k = 0; k < 1000; ++k) {
        const double d = std::pow(10.0, logd(rng)), beta = std::pow(10.0, logb(rng));
        const double s = solve_forchheimer_speed(d, beta);
        EXPECT_NEAR(s, bisect_speed(d, beta), 1e-10 * std::max(1.0, s));
        EXPECT_NEAR(s * (1.0 + beta * s), d, 1e-12 * std::max(1.0, d));
    }
    EXPECT_EQ(solve_forchheimer_speed(0.0, 3.0), 0.0);
    EXPECT_DOUBLE_EQ(solve_forchheimer_speed(2.5, 0.0), 2.5);
    EXPECT_THROW(solve_forchheimer_speed(-1.0, 1.0), DomainError);
}

class DarcyPatch : public ::testing::TestWithParam<bool> {};

TEST_P(DarcyPatch, LinearPressureIsExact)
{
    const Mat2 K{2.0, 0.5, 0.5, 1.0};
    const auto p = [](const Vec2& x) { return 1.0 + 3.0 * x.x - 2.0 * x.y; };
    for (unsigned seed = 0; seed < 20; ++seed) {
        PorousParams params;
        params.mu = 0.5;
        auto f = make_model(seed, GetParam(), K, params, p);
        const int nv = f.mesh.num_vertices();
        std::vector<double> x(nv), bflux(nv, 0.0), r(nv);
        for (int v = 0; v < nv; ++v)
            x[v] = p(f.mesh.vertex(v));
        f.model->residual<double>(x, bflux, r);
        for (int v = 0; v < nv; ++v)
            ASSERT_NEAR(r[v], 0.0, 1e-12) << "seed " << seed << " vertex " << v;

        // every scvf carries the exact flux of the constant Darcy velocity
        const Vec2 grad{3.0, -2.0};
        const Vec2 vel = K * grad * (-1.0 / params.mu);
        const auto& scvfs = f.dual->scvfs();
        for (int k = 0; k < static_cast<int>(scvfs.size()); ++k)
            ASSERT_NEAR(f.model->scvf_flux<double>(k, x), scvfs[k].measure * dot(vel, scvfs[k].normal), 1e-12);
    }
}

TEST_P(DarcyPatch, ForchheimerScalesDarcyFlux)
{
    const double kperm = 0.04, cf = 0.55;
    const auto p = [](const Vec2& x) { return 4.0 * x.x + x.y; };
    PorousParams params;
    params.mu = 0.1;
    params.rho = 2.0;
    params.c_forchheimer = cf;
    auto f = make_model(3, GetParam(), Mat2::scalar(kperm), params, p);
    const double beta = cf * std::sqrt(kperm) * params.rho / params.mu;
    EXPECT_NEAR(f.model->forchheimer_beta(0), beta, 1e-15);
    std::vector<double> x(f.mesh.num_vertices());
    for (int v = 0; v < f.mesh.num_vertices(); ++v)
        x[v] = p(f.mesh.vertex(v));
    const Vec2 vd = Vec2{4.0, 1.0} * (-kperm / params.mu);
    const double sd = norm(vd);
    const double s = bisect_speed(sd, beta);
    const auto& scvfs = f.dual->scvfs();
    for (int k = 0; k < static_cast<int>(scvfs.size()); ++k)
        ASSERT_NEAR(f.model->scvf_flux<double>(k, x),
                    params.rho * scvfs[k].measure * dot(vd, scvfs[k].normal) * s / sd, 1e-10);
}

TEST_P(DarcyPatch, SourceIntegralsSumToDomainIntegral)
{
    PorousParams params;
    params.source = [](const Vec2& x) { return x.x * x.x * x.y + 1.0; };
    params.quadrature = QuadratureKind::fifth_order;
    auto f = make_model(11, GetParam(), Mat2::identity(), params, [](const Vec2&) { return 0.0; });
    double s = 0.0;
    for (int v = 0; v < f.mesh.num_vertices(); ++v)
        s += f.model->source_integral(v);
    EXPECT_NEAR(s, 1.0 / 6.0 + 1.0, 1e-13);
}

INSTANTIATE_TEST_SUITE_P(Elements, DarcyPatch, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "triangles" : "quadrilaterals"; });

TEST(PorousParams, Validation)
{
    PorousParams p;
    p.zeta = 0.3;
    EXPECT_THROW(p.validate(), ParameterError);
    p = {};
    p.c_forchheimer = -1.0;
    EXPECT_THROW(p.validate(), ParameterError);
}
