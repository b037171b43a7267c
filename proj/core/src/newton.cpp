#include "stagbox/newton.hpp"

#include "stagbox/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <ostream>

namespace stagbox {

namespace {

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double a : v)
        s += a * a;
    return std::sqrt(s);
}

} // namespace

void NewtonConfig::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ConfigurationError("Newton tolerances must be positive");
    if (max_iterations < 1)
        throw ConfigurationError("Newton needs at least one iteration");
}

NewtonReport newton_solve(const JacobianAssembler& assembler, std::vector<double>& x, const NewtonConfig& config)
{
    config.validate();
    const auto& problem = assembler.problem();
    if (static_cast<int>(x.size()) != problem.size())
        throw InvalidInput("initial state does not match the DOF layout");
    NewtonReport report;
    std::vector<double> r;
    SparseMatrix J;
    LinearSolveOptions lin;
    lin.equilibrate = config.equilibrate;
    double tol = config.abs_tol;
    for (int it = 0;; ++it) {
        assembler.assemble(x, r, J, config.jacobian);
        const double rn = norm2(r);
        report.residual_norms.push_back(rn);
        if (it == 0)
            tol = std::max(config.abs_tol, config.rel_tol * rn);
        if (rn < tol) {
            report.converged = true;
            report.iterations = it;
            return report;
        }
        if (it == config.max_iterations)
            throw NonConvergenceError(fmt::format("Newton did not converge in {} iterations (residual {:.3e})",
                                                  config.max_iterations, rn),
                                      it, rn);
        for (double& v : r)
            v = -v;
        const auto sol = linear_solve(J, r, lin);
        double step = 1.0;
        if (config.line_search) {
            std::vector<double> trial(x.size());
            for (int k = 0; k < 10; ++k) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    trial[i] = x[i] + step * sol.x[i];
                if (norm2(problem.residual(trial)) < (1.0 - 1e-4 * step) * rn)
                    break;
                step *= 0.5;
            }
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += step * sol.x[i];
        report.update_norms.push_back(step * norm2(sol.x));
    }
}

void write_newton_csv(std::ostream& os, const NewtonReport& report)
{
    fmt::print(os, "iteration,residual_norm,update_norm\n");
    for (std::size_t k = 0; k < report.residual_norms.size(); ++k) {
        const double upd = k < report.update_norms.size() ? report.update_norms[k] : 0.0;
        fmt::print(os, "{},{:.6e},{:.6e}\n", k, report.residual_norms[k], upd);
    }
}

} // namespace stagbox
