#include "studies.hpp"

#include <stagbox/errors.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

enum ExitCode { ok = 0, config_error = 1, no_convergence = 2, internal_error = 3 };

using namespace stagbox;
using namespace stagbox::studies;

StudyConfig make_config(StudyKind kind, const std::string& path, std::vector<std::string> overrides)
{
    overrides.insert(overrides.begin(), "study.kind=" + to_string(kind));
    if (path.empty()) {
        std::istringstream empty;
        return parse_config(empty, overrides);
    }
    return load_config(path, overrides);
}

void write_defaults(const StudyConfig& config)
{
    std::filesystem::create_directories(config.output_dir);
    std::ofstream os(std::filesystem::path(config.output_dir) / "config.ini");
    os << serialize_config(config);
}

int converge(const StudyConfig& config)
{
    const auto result = run_converge(config);
    write_converge(result, config, config.output_dir);
    for (const auto& report : result.reports) {
        fmt::print("{} / {}\n", to_string(report.grid), to_string(report.projection));
        fmt::print("{:>3} {:>11} {:>6} {:>11} {:>6} {:>11} {:>6} {:>11} {:>6}\n", "m", "e_p_ff", "r", "e_vx", "r",
                   "e_vy", "r", "e_p_pm", "r");
        for (std::size_t k = 0; k < report.rows.size(); ++k) {
            const auto& row = report.rows[k];
            fmt::print("{:>3}", row.m);
            for (int q = 0; q < 4; ++q) {
                if (k == 0)
                    fmt::print(" {:>11.3e} {:>6}", error_value(row, q), "-");
                else
                    fmt::print(" {:>11.3e} {:>6.2f}", error_value(row, q), report.rate(k, q));
            }
            fmt::print("\n");
        }
    }
    if (!result.failure.empty()) {
        fmt::print(stderr, "error: {}\n", result.failure);
        return no_convergence;
    }
    return ok;
}

int obstacle(const StudyConfig& config)
{
    const auto result = run_obstacle(config);
    write_obstacle(result, config.output_dir);
    fmt::print("{:>15} {:>5} {:>2} {:>9} {:>9} {:>9} {:>9} {:>5}\n", "grid", "f", "m", "K", "v_in", "Re", "TV/vref",
               "signs");
    for (const auto& p : result.points) {
        if (!p.failure.empty()) {
            fmt::print("{:>15} {:>5} {:>2} {:>9.2e} {:>9.2e} failed: {}\n", to_string(p.grid), p.interface_factor,
                       p.level, p.permeability, p.inflow_velocity, p.failure);
            continue;
        }
        fmt::print("{:>15} {:>5} {:>2} {:>9.2e} {:>9.2e} {:>9.2e} {:>9.3f} {:>5}\n", to_string(p.grid),
                   p.interface_factor, p.level, p.permeability, p.inflow_velocity, p.reynolds,
                   p.v_ref > 0.0 ? p.tv.tv / p.v_ref : 0.0, p.tv.sign_changes);
    }
    return result.all_converged() ? ok : no_convergence;
}

int forchheimer(const StudyConfig& config)
{
    const auto result = run_forchheimer(config);
    write_forchheimer(result, config.output_dir);
    fmt::print("{:>11}", "dp");
    for (double c : result.coefficients)
        fmt::print(" {:>16}", fmt::format("q(c_F={})", c));
    fmt::print("\n");
    for (const auto& row : result.rows) {
        fmt::print("{:>11.3e}", row.pressure_drop);
        for (double q : row.flow)
            fmt::print(" {:>16.8e}", q);
        fmt::print("\n");
    }
    if (!result.failure.empty()) {
        fmt::print(stderr, "error: {}\n", result.failure);
        return no_convergence;
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coupled free flow / porous medium studies"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir;
    bool dump = false;

    const std::vector<std::pair<StudyKind, const char*>> kinds = {
        {StudyKind::converge, "grid convergence against the manufactured solution"},
        {StudyKind::obstacle, "interface oscillations around a porous block"},
        {StudyKind::forchheimer, "flow over a porous bed with and without Forchheimer drag"},
    };
    for (const auto& [kind, help] : kinds) {
        auto* sub = app.add_subcommand(to_string(kind), help);
        sub->add_option("config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--set", overrides, "override a key, section.key=value")->allow_extra_args(false);
        sub->add_option("-o,--output", output_dir, "output directory");
        sub->add_flag("--dump-fields", dump, "write field CSVs of every solve");
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    StudyKind kind = StudyKind::converge;
    for (const auto& [k, help] : kinds)
        if (app.got_subcommand(to_string(k)))
            kind = k;
    if (!output_dir.empty())
        overrides.push_back("study.output_dir=" + output_dir);
    if (dump)
        overrides.push_back("study.dump_fields=true");

    try {
        const auto config = make_config(kind, config_path, overrides);
        write_defaults(config);
        switch (kind) {
        case StudyKind::converge: return converge(config);
        case StudyKind::obstacle: return obstacle(config);
        case StudyKind::forchheimer: return forchheimer(config);
        }
    }
    catch (const ConfigurationError& e) {
        fmt::print(stderr, "configuration error: {}\n", e.what());
        return config_error;
    }
    catch (const NonConvergenceError& e) {
        fmt::print(stderr, "no convergence: {}\n", e.what());
        return no_convergence;
    }
    catch (const std::exception& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return internal_error;
    }
    return internal_error;
}
