#include "stagbox/cases.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace stagbox {

std::unique_ptr<CoupledProblem> build_manufactured_problem(const ManufacturedCase& mc, const ManufacturedSetup& setup)
{
    if (setup.level < 0 || setup.base_cells < 1)
        throw InvalidInput("refinement level and base resolution must be non-negative and positive");
    const int n = setup.base_cells << setup.level;
    const Rect ffd = mc.ff_domain(), pmd = mc.pm_domain();

    auto grid = std::make_shared<StaggeredGrid>(build_structured_grid(ffd, n, n));
    grid->assign_markers([&](const Vec2& c, const Vec2& nrm) {
        const auto m = default_ff_marker(ffd, c, nrm);
        return m == "bottom" ? std::string("coupling") : m;
    });
    auto exact_v = [mc](const Vec2& p) { return mc.v_ff(p); };
    FfBoundarySpec ff_spec;
    ff_spec.by_marker["left"] = FfBoundaryCondition::dirichlet(exact_v);
    ff_spec.by_marker["right"] = FfBoundaryCondition::dirichlet(exact_v);
    ff_spec.by_marker["top"] = setup.top_pressure
                                   ? FfBoundaryCondition::outflow([mc](const Vec2& p) { return mc.ff_normal_stress(p, 1); },
                                                                  [mc](const Vec2& p) { return mc.grad_v_ff(p).xy; })
                                   : FfBoundaryCondition::dirichlet(exact_v);
    ff_spec.by_marker["coupling"] = FfBoundaryCondition::coupling([mc](const Vec2& p) { return mc.slip_source(p); });

    FreeFlowParams ffp;
    ffp.rho = mc.rho;
    ffp.mu = mc.mu;
    ffp.enable_inertia = setup.inertia;
    ffp.zeta = setup.zeta;
    ffp.quadrature = QuadratureKind::fifth_order;
    ffp.mass_source = [mc](const Vec2& p) { return mc.q_ff(p); };
    if (setup.inertia)
        ffp.force = [mc](const Vec2& p) { return mc.f(p); };
    else
        ffp.force = [mc](const Vec2& p) {
            // drop the convective part div(v v^T) from the source
            const Mat2 G = mc.grad_v_ff(p);
            const Vec2 v = mc.v_ff(p);
            const double div = G.xx + G.yy;
            return mc.f(p) - Vec2{v.x * div + v.x * G.xx + v.y * G.xy, v.y * div + v.x * G.yx + v.y * G.yy};
        };

    PmGridSpec gs;
    gs.kind = setup.grid;
    gs.domain = pmd;
    gs.hx = ffd.width() / n;
    gs.hy = ffd.height() / n;
    gs.interface_factor = setup.grid == PmGridKind::simplex ? setup.interface_factor : 1.0;
    gs.interface_along_x = true;
    gs.interface_along_y = setup.shift_normal;
    auto mesh = std::make_shared<BoxMesh>(generate_pm_grid(gs));
    mesh->assign_markers([&](const Vec2& m, const Vec2& nrm) {
        const auto name = default_pm_marker(pmd, m, nrm);
        return name == "top" ? std::string("coupling") : name;
    });
    mesh->set_permeability([mc](const Vec2& p) { return mc.K(p); });

    auto exact_p = [mc](const Vec2& p) { return mc.p_pm(p); };
    PmBoundarySpec pm_spec;
    pm_spec.by_marker["left"] = PmBoundaryCondition::dirichlet(exact_p);
    pm_spec.by_marker["right"] = PmBoundaryCondition::dirichlet(exact_p);
    pm_spec.by_marker["bottom"] = PmBoundaryCondition::dirichlet(exact_p);
    pm_spec.by_marker["coupling"] = PmBoundaryCondition::coupling();

    PorousParams pmp;
    pmp.mu = mc.mu;
    pmp.rho = mc.rho;
    pmp.source = [mc](const Vec2& p) { return mc.q_pm(p); };
    pmp.quadrature = QuadratureKind::fifth_order;

    return std::make_unique<CoupledProblem>(grid, std::move(ff_spec), std::move(ffp), mesh, std::move(pm_spec),
                                            std::move(pmp), std::vector<Segment>{mc.interface()}, setup.projection,
                                            mc.alpha);
}

namespace {

int level_cells(double length, double h, int level, const char* what)
{
    const double n = length / h;
    const long k = std::lround(n);
    if (k < 1 || std::abs(n - k) > 1e-8 * n)
        throw InvalidInput(fmt::format("{} is not a multiple of the grid spacing", what));
    return static_cast<int>(k) << level;
}

} // namespace

std::unique_ptr<CoupledProblem> build_obstacle_problem(const ObstacleSetup& setup)
{
    const Rect& ch = setup.channel;
    const Rect& bl = setup.block;
    if (!(bl.x0 > ch.x0 && bl.y0 > ch.y0 && bl.y1 < ch.y1 && bl.x1 <= ch.x1 && bl.x0 < bl.x1 && bl.y0 < bl.y1))
        throw InvalidInput("porous block must lie inside the channel and touch at most its right side");
    if (setup.level < 0)
        throw InvalidInput("refinement level must be non-negative");
    const int nx = level_cells(ch.width(), setup.dx, setup.level, "channel width");
    const int ny = level_cells(ch.height(), setup.dy, setup.level, "channel height");
    const double hx = ch.width() / nx, hy = ch.height() / ny;
    level_cells(bl.x0 - ch.x0, hx, 0, "block offset");
    level_cells(bl.y0 - ch.y0, hy, 0, "block offset");
    level_cells(bl.width(), hx, 0, "block width");
    level_cells(bl.height(), hy, 0, "block height");

    auto grid = std::make_shared<StaggeredGrid>(
        build_structured_grid(ch, nx, ny, [bl](const Vec2& c) { return bl.contains(c); }));
    grid->assign_markers([&](const Vec2& c, const Vec2& n) {
        const auto m = default_ff_marker(ch, c, n);
        return m == "obstacle" ? std::string("coupling") : m;
    });
    const double vmax = setup.inflow_velocity, w = ch.width();
    FfBoundarySpec ff_spec;
    // half channel: wall at x0, symmetry at x1
    ff_spec.by_marker["top"] = FfBoundaryCondition::dirichlet([=](const Vec2& p) {
        const double s = (p.x - ch.x0) / w;
        return Vec2{0.0, -vmax * s * (2.0 - s)};
    });
    ff_spec.by_marker["bottom"] = FfBoundaryCondition::outflow([](const Vec2&) { return 0.0; });
    ff_spec.by_marker["left"] = FfBoundaryCondition::no_slip();
    ff_spec.by_marker["right"] = FfBoundaryCondition::symmetry();
    ff_spec.by_marker["coupling"] = FfBoundaryCondition::coupling();

    FreeFlowParams ffp;
    ffp.rho = setup.rho;
    ffp.mu = setup.mu;
    ffp.zeta = setup.zeta;
    ffp.enable_inertia = setup.inertia;

    PmGridSpec gs;
    gs.kind = setup.grid;
    gs.domain = bl;
    gs.hx = hx;
    gs.hy = hy;
    gs.interface_factor = setup.grid == PmGridKind::simplex ? setup.interface_factor : 1.0;
    gs.interface_along_x = true;
    gs.interface_along_y = true;
    auto mesh = std::make_shared<BoxMesh>(generate_pm_grid(gs));
    mesh->assign_markers([&](const Vec2& m, const Vec2& n) {
        const auto name = default_pm_marker(bl, m, n);
        return name == "right" && bl.x1 >= ch.x1 ? std::string("symmetry") : std::string("coupling");
    });
    const double K = setup.permeability;
    mesh->set_permeability([K](const Vec2&) { return Mat2::scalar(K); });

    PmBoundarySpec pm_spec;
    pm_spec.by_marker["coupling"] = PmBoundaryCondition::coupling();
    pm_spec.by_marker["symmetry"] = PmBoundaryCondition::no_flow();

    PorousParams pmp;
    pmp.mu = setup.mu;
    pmp.rho = setup.rho;

    const std::vector<Segment> iface{{{bl.x0, bl.y1}, {bl.x1, bl.y1}},
                                     {{bl.x0, bl.y0}, {bl.x0, bl.y1}},
                                     {{bl.x0, bl.y0}, {bl.x1, bl.y0}}};
    return std::make_unique<CoupledProblem>(grid, std::move(ff_spec), std::move(ffp), mesh, std::move(pm_spec),
                                            std::move(pmp), iface, setup.projection, setup.alpha_bjs);
}

std::vector<int> obstacle_top_faces(const CoupledProblem& problem, const ObstacleSetup& setup)
{
    const auto& g = problem.ff_grid();
    const double tol = 1e-9 * setup.channel.height();
    std::vector<int> faces;
    for (int f : problem.freeflow().coupling_faces()) {
        const Vec2 c = g.face_center(f);
        if (g.face_index(f).d == 1 && std::abs(c.y - setup.block.y1) < tol && c.x >= setup.block.x0)
            faces.push_back(f);
    }
    std::sort(faces.begin(), faces.end(),
              [&](int a, int b) { return g.face_center(a).x < g.face_center(b).x; });
    return faces;
}

std::unique_ptr<CoupledProblem> build_forchheimer_problem(const ForchheimerSetup& setup)
{
    const Rect& bed = setup.bed;
    if (setup.nx < 1 || setup.ny < 1 || !(setup.channel_height > 0.0))
        throw InvalidInput("forchheimer channel needs positive resolution and height");
    const Rect ch{bed.x0, bed.y1, bed.x1, bed.y1 + setup.channel_height};
    auto grid = std::make_shared<StaggeredGrid>(build_structured_grid(ch, setup.nx, setup.ny));
    grid->assign_markers([&](const Vec2& c, const Vec2& n) {
        const auto m = default_ff_marker(ch, c, n);
        return m == "bottom" ? std::string("coupling") : m;
    });
    const double dp = setup.pressure_drop;
    FfBoundarySpec ff_spec;
    ff_spec.by_marker["left"] = FfBoundaryCondition::outflow([dp](const Vec2&) { return dp; });
    ff_spec.by_marker["right"] = FfBoundaryCondition::outflow([](const Vec2&) { return 0.0; });
    ff_spec.by_marker["top"] = FfBoundaryCondition::no_slip();
    ff_spec.by_marker["coupling"] = FfBoundaryCondition::coupling();

    FreeFlowParams ffp;
    ffp.rho = setup.rho;
    ffp.mu = setup.mu;
    ffp.enable_inertia = false;

    PmGridSpec gs;
    gs.domain = bed;
    gs.hx = bed.width() / setup.nx;
    gs.hy = bed.height() / setup.ny;
    auto mesh = std::make_shared<BoxMesh>(generate_pm_grid(gs));
    mesh->assign_markers([&](const Vec2& m, const Vec2& n) {
        const auto name = default_pm_marker(bed, m, n);
        return name == "top" ? std::string("coupling") : name;
    });
    const double K = setup.permeability;
    mesh->set_permeability([K](const Vec2&) { return Mat2::scalar(K); });

    PmBoundarySpec pm_spec;
    pm_spec.by_marker["left"] = PmBoundaryCondition::dirichlet([dp](const Vec2&) { return dp; });
    pm_spec.by_marker["right"] = PmBoundaryCondition::dirichlet([](const Vec2&) { return 0.0; });
    pm_spec.by_marker["bottom"] = PmBoundaryCondition::no_flow();
    pm_spec.by_marker["coupling"] = PmBoundaryCondition::coupling();

    PorousParams pmp;
    pmp.mu = setup.mu;
    pmp.rho = setup.rho;
    pmp.c_forchheimer = setup.c_forchheimer;

    return std::make_unique<CoupledProblem>(grid, std::move(ff_spec), std::move(ffp), mesh, std::move(pm_spec),
                                            std::move(pmp), std::vector<Segment>{{{bed.x0, bed.y1}, {bed.x1, bed.y1}}},
                                            ProjectionKind::l2, setup.alpha_bjs);
}

double forchheimer_bed_outflow(const CoupledProblem& problem, std::span<const double> x)
{
    const auto& pm = problem.porous();
    const auto& mesh = problem.pm_mesh();
    std::vector<double> traction(problem.ff_grid().num_faces()), ff_flux(traction.size()), pm_flux(mesh.num_vertices());
    problem.coupling().evaluate<double>(x, traction, ff_flux, pm_flux);
    const auto acc = pm.control_volume_balance(x, pm_flux);
    double x1 = mesh.vertex(0).x;
    for (int v = 1; v < mesh.num_vertices(); ++v)
        x1 = std::max(x1, mesh.vertex(v).x);
    double out = 0.0;
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (pm.is_dirichlet(v) && mesh.vertex(v).x == x1)
            out -= acc[v];
    return out;
}

} // namespace stagbox
