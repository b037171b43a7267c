#include "stagbox/verify.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <ostream>

namespace stagbox {

double error_value(const ErrorRow& row, int q)
{
    switch (q) {
    case 0: return row.e_p_ff;
    case 1: return row.e_vx;
    case 2: return row.e_vy;
    default: return row.e_p_pm;
    }
}

double ErrorReport::rate(std::size_t k, int q) const
{
    if (k == 0 || k >= rows.size())
        return std::nan("");
    return std::log2(error_value(rows[k - 1], q) / error_value(rows[k], q));
}

ErrorRow error_norms(const CoupledProblem& problem, std::span<const double> x, const ManufacturedCase& mc)
{
    ErrorRow row;
    const auto& g = problem.ff_grid();
    const auto p_ff = problem.ff_cell_pressures(x);
    const auto v_ff = problem.ff_face_velocities(x);
    double sp = 0.0, sx = 0.0, sy = 0.0, spm = 0.0;
    for (int c = 0; c < g.num_cells(); ++c)
        if (g.active(c)) {
            const double e = p_ff[c] - mc.p_ff(g.cell_center(c));
            sp += g.cell_measure() * e * e;
        }
    for (int f = 0; f < g.num_faces(); ++f) {
        if (!g.face_exists(f))
            continue;
        const int d = g.face_index(f).d;
        const double e = v_ff[f] - mc.v_ff(g.face_center(f))[d];
        (d == 0 ? sx : sy) += g.face_dual_rect(f).area() * e * e;
    }
    const auto p_pm = problem.pm_pressures(x);
    const auto& mesh = problem.pm_mesh();
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const double e = p_pm[v] - mc.p_pm(mesh.vertex(v));
        spm += problem.dual().cv_measure(v) * e * e;
    }
    row.e_p_ff = std::sqrt(sp);
    row.e_vx = std::sqrt(sx);
    row.e_vy = std::sqrt(sy);
    row.e_p_pm = std::sqrt(spm);
    return row;
}

void write_error_csv(std::ostream& os, const ErrorReport& report)
{
    fmt::print(os, "m,e_p_ff,r_p_ff,e_vx,r_vx,e_vy,r_vy,e_p_pm,r_p_pm\n");
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto& r = report.rows[k];
        fmt::print(os, "{}", r.m);
        for (int q = 0; q < 4; ++q) {
            fmt::print(os, ",{:.6e}", error_value(r, q));
            if (k == 0)
                fmt::print(os, ",");
            else
                fmt::print(os, ",{:.4f}", report.rate(k, q));
        }
        fmt::print(os, "\n");
    }
}

TotalVariation total_variation(std::span<const double> values)
{
    if (values.size() < 2)
        throw InvalidInput("total variation needs at least two values");
    TotalVariation out;
    int prev_sign = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0)
            out.tv += std::abs(values[k] - values[k - 1]);
        const int s = values[k] > 0.0 ? 1 : (values[k] < 0.0 ? -1 : prev_sign);
        if (prev_sign != 0 && s != 0 && s != prev_sign)
            ++out.sign_changes;
        if (s != 0)
            prev_sign = s;
    }
    return out;
}

} // namespace stagbox
