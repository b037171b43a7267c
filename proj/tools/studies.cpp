#include "studies.hpp"

#include <stagbox/errors.hpp>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace stagbox::studies {

namespace pt = boost::property_tree;

std::string to_string(StudyKind kind)
{
    switch (kind) {
    case StudyKind::converge: return "converge";
    case StudyKind::obstacle: return "obstacle";
    case StudyKind::forchheimer: return "forchheimer";
    }
    return "?";
}

StudyKind parse_study_kind(const std::string& name)
{
    if (name == "converge") return StudyKind::converge;
    if (name == "obstacle") return StudyKind::obstacle;
    if (name == "forchheimer") return StudyKind::forchheimer;
    throw ConfigurationError(fmt::format("unknown study kind '{}'", name));
}

StudyConfig default_config(StudyKind kind)
{
    StudyConfig c;
    c.kind = kind;
    switch (kind) {
    case StudyKind::converge:
        break;
    case StudyKind::obstacle:
        c.grids = {PmGridKind::conforming, PmGridKind::box_conforming, PmGridKind::simplex};
        c.level_min = 0;
        c.level_max = 2;
        c.rho = 1.2;
        c.mu = 1.8e-5;
        c.zeta = 1.0;
        c.permeabilities = {1e-12, 1e-10, 1e-8, 1e-6};
        c.inflow_velocities = {1.5e-3, 1.5e-2};
        break;
    case StudyKind::forchheimer:
        c.rho = 1.2;
        c.mu = 1.8e-5;
        c.zeta = 1.0;
        c.inertia = false;
        c.permeabilities = {1e-7};
        c.forchheimer_coefficients = {0.0, 0.55};
        c.pressure_drops = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
        break;
    }
    return c;
}

void StudyConfig::validate() const
{
    if (level_min < 0 || level_max < level_min)
        throw ConfigurationError("refinement range must be nonempty and non-negative");
    if (grids.empty())
        throw ConfigurationError("at least one grid kind is required");
    if (base_cells < 1 || nx < 1 || ny < 1)
        throw ConfigurationError("grid resolutions must be positive");
    if (!(rho > 0.0) || !(mu > 0.0) || !(alpha_bjs >= 0.0))
        throw ConfigurationError("density and viscosity must be positive, alpha_bjs non-negative");
    if (!(zeta >= 0.5 && zeta <= 1.0))
        throw ConfigurationError("zeta must lie in [0.5, 1]");
    auto finite = [](const std::vector<double>& v) {
        for (double a : v)
            if (!std::isfinite(a))
                return false;
        return true;
    };
    for (const auto* list : {&interface_factors, &permeabilities, &inflow_velocities, &forchheimer_coefficients,
                             &pressure_drops, &ramp})
        if (!finite(*list))
            throw ConfigurationError("parameter sweeps must be finite lists");
    for (double f : interface_factors)
        if (!(f > 0.0 && f <= 1.0))
            throw ConfigurationError("interface factors must lie in (0, 1]");
    for (double k : permeabilities)
        if (!(k > 0.0))
            throw ConfigurationError("permeabilities must be positive");
    for (double c : forchheimer_coefficients)
        if (!(c >= 0.0))
            throw ConfigurationError("Forchheimer coefficients must be non-negative");
    for (double r : ramp)
        if (!(r > 0.0 && r < 1.0))
            throw ConfigurationError("ramp fractions must lie in (0, 1)");
    switch (kind) {
    case StudyKind::converge:
        break;
    case StudyKind::obstacle:
        if (!(block.x0 > channel.x0 && block.y0 > channel.y0 && block.y1 < channel.y1 && block.x1 <= channel.x1 &&
              block.x0 < block.x1 && block.y0 < block.y1))
            throw ConfigurationError("porous block must lie strictly inside the channel");
        if (permeabilities.empty() || inflow_velocities.empty())
            throw ConfigurationError("obstacle study needs permeabilities and inflow velocities");
        if (!(dx > 0.0) || !(dy > 0.0))
            throw ConfigurationError("obstacle spacings must be positive");
        break;
    case StudyKind::forchheimer:
        if (permeabilities.size() != 1)
            throw ConfigurationError("forchheimer study takes exactly one permeability");
        if (forchheimer_coefficients.empty() || pressure_drops.empty())
            throw ConfigurationError("forchheimer study needs coefficients and pressure drops");
        if (!(channel_height > 0.0) || !(bed.width() > 0.0) || !(bed.height() > 0.0))
            throw ConfigurationError("forchheimer geometry must have positive extents");
        break;
    }
    newton.validate();
}

namespace {

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> parts;
    const auto t = boost::trim_copy(s);
    if (t.empty())
        return parts;
    boost::split(parts, t, boost::is_any_of(","));
    for (auto& p : parts)
        boost::trim(p);
    return parts;
}

double to_double(const std::string& s)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    }
    catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw ConfigurationError(fmt::format("'{}' is not a number", s));
    return v;
}

int to_int(const std::string& s)
{
    const double v = to_double(s);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigurationError(fmt::format("'{}' is not an integer", s));
    return static_cast<int>(v);
}

bool to_bool(const std::string& s)
{
    const auto l = boost::to_lower_copy(s);
    if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
    if (l == "false" || l == "0" || l == "no" || l == "off") return false;
    throw ConfigurationError(fmt::format("'{}' is not a boolean", s));
}

std::vector<double> to_doubles(const std::string& s)
{
    std::vector<double> v;
    for (const auto& p : split_list(s))
        v.push_back(to_double(p));
    return v;
}

Rect to_rect(const std::string& s)
{
    const auto v = to_doubles(s);
    if (v.size() != 4)
        throw ConfigurationError(fmt::format("'{}' is not a rectangle x0, y0, x1, y1", s));
    return {v[0], v[1], v[2], v[3]};
}

template<class F>
auto wrap_enum(F parse, const std::string& s)
{
    try {
        return parse(s);
    }
    catch (const ConfigurationError&) {
        throw;
    }
    catch (const Error& e) {
        throw ConfigurationError(e.what());
    }
}

std::string join(const std::vector<double>& v) { return fmt::format("{}", fmt::join(v, ", ")); }
std::string rect_str(const Rect& r) { return fmt::format("{}, {}, {}, {}", r.x0, r.y0, r.x1, r.y1); }

struct Field {
    const char* section;
    const char* key;
    std::function<std::string(const StudyConfig&)> get;
    std::function<void(StudyConfig&, const std::string&)> set;
};

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        {"study", "kind", [](const StudyConfig& c) { return to_string(c.kind); },
         [](StudyConfig& c, const std::string& s) { c.kind = parse_study_kind(s); }},
        {"study", "output_dir", [](const StudyConfig& c) { return c.output_dir; },
         [](StudyConfig& c, const std::string& s) { c.output_dir = s; }},
        {"study", "dump_fields", [](const StudyConfig& c) { return std::string(c.dump_fields ? "true" : "false"); },
         [](StudyConfig& c, const std::string& s) { c.dump_fields = to_bool(s); }},

        {"grid", "kinds",
         [](const StudyConfig& c) {
             std::vector<std::string> n;
             for (auto g : c.grids)
                 n.push_back(to_string(g));
             return boost::join(n, ", ");
         },
         [](StudyConfig& c, const std::string& s) {
             c.grids.clear();
             for (const auto& p : split_list(s))
                 c.grids.push_back(wrap_enum(parse_pm_grid_kind, p));
         }},
        {"grid", "projection", [](const StudyConfig& c) { return to_string(c.projection); },
         [](StudyConfig& c, const std::string& s) { c.projection = wrap_enum(parse_projection_kind, s); }},
        {"grid", "level_min", [](const StudyConfig& c) { return std::to_string(c.level_min); },
         [](StudyConfig& c, const std::string& s) { c.level_min = to_int(s); }},
        {"grid", "level_max", [](const StudyConfig& c) { return std::to_string(c.level_max); },
         [](StudyConfig& c, const std::string& s) { c.level_max = to_int(s); }},
        {"grid", "base_cells", [](const StudyConfig& c) { return std::to_string(c.base_cells); },
         [](StudyConfig& c, const std::string& s) { c.base_cells = to_int(s); }},
        {"grid", "interface_factors", [](const StudyConfig& c) { return join(c.interface_factors); },
         [](StudyConfig& c, const std::string& s) { c.interface_factors = to_doubles(s); }},

        {"physics", "rho", [](const StudyConfig& c) { return fmt::format("{}", c.rho); },
         [](StudyConfig& c, const std::string& s) { c.rho = to_double(s); }},
        {"physics", "mu", [](const StudyConfig& c) { return fmt::format("{}", c.mu); },
         [](StudyConfig& c, const std::string& s) { c.mu = to_double(s); }},
        {"physics", "alpha_bjs", [](const StudyConfig& c) { return fmt::format("{}", c.alpha_bjs); },
         [](StudyConfig& c, const std::string& s) { c.alpha_bjs = to_double(s); }},
        {"physics", "zeta", [](const StudyConfig& c) { return fmt::format("{}", c.zeta); },
         [](StudyConfig& c, const std::string& s) { c.zeta = to_double(s); }},
        {"physics", "inertia", [](const StudyConfig& c) { return std::string(c.inertia ? "true" : "false"); },
         [](StudyConfig& c, const std::string& s) { c.inertia = to_bool(s); }},
        {"physics", "permeabilities", [](const StudyConfig& c) { return join(c.permeabilities); },
         [](StudyConfig& c, const std::string& s) { c.permeabilities = to_doubles(s); }},
        {"physics", "inflow_velocities", [](const StudyConfig& c) { return join(c.inflow_velocities); },
         [](StudyConfig& c, const std::string& s) { c.inflow_velocities = to_doubles(s); }},
        {"physics", "forchheimer_coefficients", [](const StudyConfig& c) { return join(c.forchheimer_coefficients); },
         [](StudyConfig& c, const std::string& s) { c.forchheimer_coefficients = to_doubles(s); }},
        {"physics", "pressure_drops", [](const StudyConfig& c) { return join(c.pressure_drops); },
         [](StudyConfig& c, const std::string& s) { c.pressure_drops = to_doubles(s); }},

        {"obstacle", "channel", [](const StudyConfig& c) { return rect_str(c.channel); },
         [](StudyConfig& c, const std::string& s) { c.channel = to_rect(s); }},
        {"obstacle", "block", [](const StudyConfig& c) { return rect_str(c.block); },
         [](StudyConfig& c, const std::string& s) { c.block = to_rect(s); }},
        {"obstacle", "dx", [](const StudyConfig& c) { return fmt::format("{}", c.dx); },
         [](StudyConfig& c, const std::string& s) { c.dx = to_double(s); }},
        {"obstacle", "dy", [](const StudyConfig& c) { return fmt::format("{}", c.dy); },
         [](StudyConfig& c, const std::string& s) { c.dy = to_double(s); }},
        {"obstacle", "ramp", [](const StudyConfig& c) { return join(c.ramp); },
         [](StudyConfig& c, const std::string& s) { c.ramp = to_doubles(s); }},

        {"forchheimer", "bed", [](const StudyConfig& c) { return rect_str(c.bed); },
         [](StudyConfig& c, const std::string& s) { c.bed = to_rect(s); }},
        {"forchheimer", "channel_height", [](const StudyConfig& c) { return fmt::format("{}", c.channel_height); },
         [](StudyConfig& c, const std::string& s) { c.channel_height = to_double(s); }},
        {"forchheimer", "nx", [](const StudyConfig& c) { return std::to_string(c.nx); },
         [](StudyConfig& c, const std::string& s) { c.nx = to_int(s); }},
        {"forchheimer", "ny", [](const StudyConfig& c) { return std::to_string(c.ny); },
         [](StudyConfig& c, const std::string& s) { c.ny = to_int(s); }},

        {"newton", "abs_tol", [](const StudyConfig& c) { return fmt::format("{}", c.newton.abs_tol); },
         [](StudyConfig& c, const std::string& s) { c.newton.abs_tol = to_double(s); }},
        {"newton", "rel_tol", [](const StudyConfig& c) { return fmt::format("{}", c.newton.rel_tol); },
         [](StudyConfig& c, const std::string& s) { c.newton.rel_tol = to_double(s); }},
        {"newton", "max_iterations", [](const StudyConfig& c) { return std::to_string(c.newton.max_iterations); },
         [](StudyConfig& c, const std::string& s) { c.newton.max_iterations = to_int(s); }},
        {"newton", "jacobian", [](const StudyConfig& c) { return to_string(c.newton.jacobian); },
         [](StudyConfig& c, const std::string& s) { c.newton.jacobian = wrap_enum(parse_jacobian_mode, s); }},
        {"newton", "line_search",
         [](const StudyConfig& c) { return std::string(c.newton.line_search ? "true" : "false"); },
         [](StudyConfig& c, const std::string& s) { c.newton.line_search = to_bool(s); }},
        {"newton", "equilibrate",
         [](const StudyConfig& c) { return std::string(c.newton.equilibrate ? "true" : "false"); },
         [](StudyConfig& c, const std::string& s) { c.newton.equilibrate = to_bool(s); }},
    };
    return table;
}

const Field& find_field(const std::string& section, const std::string& key)
{
    for (const auto& f : fields())
        if (section == f.section && key == f.key)
            return f;
    throw ConfigurationError(fmt::format("unknown configuration key '{}.{}'", section, key));
}

} // namespace

StudyConfig parse_config(std::istream& is, const std::vector<std::string>& overrides)
{
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    }
    catch (const pt::ini_parser_error& e) {
        throw ConfigurationError(fmt::format("malformed configuration: {}", e.message()));
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        const auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigurationError(fmt::format("override '{}' is not of the form section.key=value", o));
        const auto path = boost::trim_copy(o.substr(0, eq));
        tree.put(pt::ptree::path_type(path, '.'), boost::trim_copy(o.substr(eq + 1)));
    }
    for (const auto& [section, sub] : tree) {
        if (sub.empty())
            throw ConfigurationError(fmt::format("key '{}' outside of a section", section));
        for (const auto& [key, value] : sub)
            find_field(section, key);
    }

    const auto kind_str = tree.get_optional<std::string>(pt::ptree::path_type("study.kind", '.'));
    StudyConfig c = default_config(kind_str ? parse_study_kind(*kind_str) : StudyKind::converge);
    for (const auto& [section, sub] : tree)
        for (const auto& [key, value] : sub)
            find_field(section, key).set(c, value.data());
    c.validate();
    return c;
}

StudyConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigurationError(fmt::format("cannot open configuration '{}'", path.string()));
    return parse_config(is, overrides);
}

std::string serialize_config(const StudyConfig& config)
{
    std::string out, section;
    for (const auto& f : fields()) {
        if (section != f.section) {
            section = f.section;
            out += fmt::format("{}[{}]\n", out.empty() ? "" : "\n", section);
        }
        out += fmt::format("{} = {}\n", f.key, f.get(config));
    }
    return out;
}

namespace {

NewtonReport solve(const CoupledProblem& problem, std::vector<double>& x, const NewtonConfig& config)
{
    JacobianAssembler assembler(problem);
    return newton_solve(assembler, x, config);
}

ObstacleSetup obstacle_setup(const StudyConfig& c, PmGridKind grid, double f, int level, double K, double v)
{
    ObstacleSetup s;
    s.channel = c.channel;
    s.block = c.block;
    s.dx = c.dx;
    s.dy = c.dy;
    s.level = level;
    s.grid = grid;
    s.projection = c.projection;
    s.interface_factor = f;
    s.rho = c.rho;
    s.mu = c.mu;
    s.alpha_bjs = c.alpha_bjs;
    s.zeta = c.zeta;
    s.permeability = K;
    s.inflow_velocity = v;
    s.inertia = c.inertia;
    return s;
}

} // namespace

ConvergeResult run_converge(const StudyConfig& config)
{
    config.validate();
    const ManufacturedCase mc;
    ConvergeResult result;
    for (PmGridKind grid : config.grids) {
        ErrorReport report;
        report.grid = grid;
        report.projection = config.projection;
        std::vector<ConvergeLevel> levels;
        for (int m = config.level_min; m <= config.level_max && result.failure.empty(); ++m) {
            ManufacturedSetup s;
            s.grid = grid;
            s.projection = config.projection;
            s.level = m;
            s.base_cells = config.base_cells;
            s.interface_factor = config.interface_factors.empty() ? 0.95 : config.interface_factors.front();
            s.inertia = config.inertia;
            s.zeta = config.zeta;
            const auto problem = build_manufactured_problem(mc, s);
            std::vector<double> x(problem->size(), 0.0);
            ConvergeLevel level;
            try {
                level.newton = solve(*problem, x, config.newton);
            }
            catch (const NonConvergenceError& e) {
                result.failure = fmt::format("{} grid, level {}: {}", to_string(grid), m, e.what());
                break;
            }
            level.errors = error_norms(*problem, x, mc);
            level.errors.m = m;
            level.balance = problem->mass_balance(x);
            report.rows.push_back(level.errors);
            levels.push_back(std::move(level));
            if (config.dump_fields) {
                std::filesystem::create_directories(config.output_dir);
                write_fields(*problem, x, config.output_dir, fmt::format("{}_m{}", to_string(grid), m));
            }
        }
        result.reports.push_back(std::move(report));
        result.levels.push_back(std::move(levels));
        if (!result.failure.empty())
            break;
    }
    return result;
}

bool ObstacleResult::all_converged() const
{
    for (const auto& p : points)
        if (!p.failure.empty())
            return false;
    return true;
}

ObstacleResult run_obstacle(const StudyConfig& config)
{
    config.validate();
    ObstacleResult result;
    for (PmGridKind grid : config.grids) {
        const std::vector<double> factors =
            grid == PmGridKind::simplex ? config.interface_factors : std::vector<double>{1.0};
        for (double f : factors)
            for (int m = config.level_min; m <= config.level_max; ++m)
                for (double K : config.permeabilities)
                    for (double v : config.inflow_velocities) {
                        ObstaclePoint pt;
                        pt.grid = grid;
                        pt.interface_factor = f;
                        pt.level = m;
                        pt.permeability = K;
                        pt.inflow_velocity = v;
                        pt.reynolds = config.rho * std::abs(v) * config.channel.width() / config.mu;
                        const auto setup = obstacle_setup(config, grid, f, m, K, v);
                        const auto problem = build_obstacle_problem(setup);
                        std::vector<double> x(problem->size(), 0.0);
                        try {
                            // continuation in the inflow speed, warm-starting each step
                            if (config.inertia)
                                for (double r : config.ramp) {
                                    auto s = setup;
                                    s.inflow_velocity = r * v;
                                    solve(*build_obstacle_problem(s), x, config.newton);
                                }
                            pt.newton_iterations = solve(*problem, x, config.newton).iterations;
                        }
                        catch (const NonConvergenceError& e) {
                            pt.failure = e.what();
                            result.points.push_back(std::move(pt));
                            continue;
                        }
                        pt.balance = problem->mass_balance(x);
                        for (int face : obstacle_top_faces(*problem, setup)) {
                            pt.x.push_back(problem->ff_grid().face_center(face).x);
                            pt.vy.push_back(problem->freeflow().velocity<double>(x, face));
                            pt.v_ref = std::max(pt.v_ref, std::abs(pt.vy.back()));
                        }
                        pt.tv = total_variation(pt.vy);
                        if (config.dump_fields) {
                            std::filesystem::create_directories(config.output_dir);
                            write_fields(*problem, x, config.output_dir,
                                         fmt::format("{}_f{}_m{}_K{}_v{}", to_string(grid), f, m, K, v));
                        }
                        result.points.push_back(std::move(pt));
                    }
    }
    return result;
}

ForchheimerResult run_forchheimer(const StudyConfig& config)
{
    config.validate();
    ForchheimerResult result;
    result.coefficients = config.forchheimer_coefficients;
    for (double dp : config.pressure_drops) {
        ForchheimerRow row;
        row.pressure_drop = dp;
        for (double cf : config.forchheimer_coefficients) {
            ForchheimerSetup s;
            s.bed = config.bed;
            s.channel_height = config.channel_height;
            s.nx = config.nx;
            s.ny = config.ny;
            s.rho = config.rho;
            s.mu = config.mu;
            s.alpha_bjs = config.alpha_bjs;
            s.permeability = config.permeabilities.front();
            s.c_forchheimer = cf;
            s.pressure_drop = dp;
            const auto problem = build_forchheimer_problem(s);
            std::vector<double> x(problem->size(), 0.0);
            try {
                solve(*problem, x, config.newton);
            }
            catch (const NonConvergenceError& e) {
                result.failure = fmt::format("pressure drop {}, c_F {}: {}", dp, cf, e.what());
                return result;
            }
            row.flow.push_back(forchheimer_bed_outflow(*problem, x));
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os)
        throw Error(fmt::format("cannot write '{}'", path.string()));
    os.precision(17);
    return os;
}

} // namespace

void write_converge(const ConvergeResult& result, const StudyConfig& config, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < result.reports.size(); ++k) {
        const auto& report = result.reports[k];
        const auto name = fmt::format("{}_{}", to_string(report.grid), to_string(report.projection));
        auto os = open_out(dir / fmt::format("errors_{}.csv", name));
        write_error_csv(os, report);
        for (const auto& level : result.levels[k]) {
            auto nl = open_out(dir / fmt::format("newton_{}_m{}.csv", name, level.errors.m));
            write_newton_csv(nl, level.newton);
        }
        auto bal = open_out(dir / fmt::format("balance_{}.csv", name));
        fmt::print(bal, "m,interface_imbalance,global_relative\n");
        for (const auto& level : result.levels[k])
            fmt::print(bal, "{},{:.6e},{:.6e}\n", level.errors.m, level.balance.interface_imbalance,
                       level.balance.relative());
    }
    (void)config;
}

void write_obstacle(const ObstacleResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto os = open_out(dir / "tv.csv");
    fmt::print(os, "grid,interface_factor,level,K,inflow_velocity,Re,v_ref,tv_over_vref,sign_changes,newton_iterations,"
                   "converged\n");
    for (const auto& p : result.points)
        fmt::print(os, "{},{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{},{},{}\n", to_string(p.grid), p.interface_factor,
                   p.level, p.permeability, p.inflow_velocity, p.reynolds, p.v_ref,
                   p.v_ref > 0.0 ? p.tv.tv / p.v_ref : 0.0, p.tv.sign_changes, p.newton_iterations,
                   p.failure.empty() ? 1 : 0);
    auto prof = open_out(dir / "interface_profiles.dat");
    for (const auto& p : result.points) {
        if (!p.failure.empty())
            continue;
        fmt::print(prof, "# grid={} f={} level={} K={} v={}\n", to_string(p.grid), p.interface_factor, p.level,
                   p.permeability, p.inflow_velocity);
        for (std::size_t k = 0; k < p.x.size(); ++k)
            fmt::print(prof, "{:.8e} {:.8e}\n", p.x[k], p.vy[k]);
        fmt::print(prof, "\n\n");
    }
}

void write_forchheimer(const ForchheimerResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto os = open_out(dir / "forchheimer.csv");
    fmt::print(os, "pressure_drop");
    for (double c : result.coefficients)
        fmt::print(os, ",flow_cF_{}", c);
    fmt::print(os, "\n");
    for (const auto& row : result.rows) {
        fmt::print(os, "{:.6e}", row.pressure_drop);
        for (double q : row.flow)
            fmt::print(os, ",{:.10e}", q);
        fmt::print(os, "\n");
    }
}

void write_fields(const CoupledProblem& problem, std::span<const double> x, const std::filesystem::path& dir,
                  const std::string& prefix)
{
    const auto& g = problem.ff_grid();
    auto cells = open_out(dir / fmt::format("{}_ff_pressure.csv", prefix));
    fmt::print(cells, "x,y,p\n");
    const auto p = problem.ff_cell_pressures(x);
    for (int c = 0; c < g.num_cells(); ++c)
        if (g.active(c)) {
            const Vec2 xc = g.cell_center(c);
            fmt::print(cells, "{:.8e},{:.8e},{:.10e}\n", xc.x, xc.y, p[c]);
        }
    auto faces = open_out(dir / fmt::format("{}_ff_velocity.csv", prefix));
    fmt::print(faces, "x,y,component,v\n");
    const auto v = problem.ff_face_velocities(x);
    for (int f = 0; f < g.num_faces(); ++f)
        if (g.face_exists(f)) {
            const Vec2 xf = g.face_center(f);
            fmt::print(faces, "{:.8e},{:.8e},{},{:.10e}\n", xf.x, xf.y, g.face_index(f).d, v[f]);
        }
    auto verts = open_out(dir / fmt::format("{}_pm_pressure.csv", prefix));
    fmt::print(verts, "x,y,p\n");
    const auto pp = problem.pm_pressures(x);
    for (int k = 0; k < problem.pm_mesh().num_vertices(); ++k) {
        const Vec2 xv = problem.pm_mesh().vertex(k);
        fmt::print(verts, "{:.8e},{:.8e},{:.10e}\n", xv.x, xv.y, pp[k]);
    }
}

} // namespace stagbox::studies
