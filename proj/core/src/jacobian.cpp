#include "stagbox/jacobian.hpp"

#include "stagbox/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stagbox {

std::string to_string(JacobianMode mode)
{
    return mode == JacobianMode::autodiff ? "autodiff" : "finite_difference";
}

JacobianMode parse_jacobian_mode(const std::string& name)
{
    if (name == "autodiff" || name == "ad") return JacobianMode::autodiff;
    if (name == "finite_difference" || name == "fd") return JacobianMode::finite_difference;
    throw InvalidInput("unknown Jacobian mode '" + name + "'");
}

JacobianAssembler::JacobianAssembler(const CoupledProblem& problem) : problem_(&problem)
{
    const int n = problem.size();
    std::vector<Tracer> x(n), r(n);
    for (int k = 0; k < n; ++k)
        x[k] = Tracer(0.0, k);
    problem.residual<Tracer>(x, r);

    std::vector<Eigen::Triplet<double, int>> trip;
    for (int i = 0; i < n; ++i)
        for (int j : r[i].deps)
            trip.emplace_back(i, j, 1.0);
    pattern_.resize(n, n);
    pattern_.setFromTriplets(trip.begin(), trip.end());
    pattern_.makeCompressed();

    // rows of every column come from the column-major pattern; columns of a row
    // from the traced dependencies
    std::vector<std::vector<int>> row_cols(n);
    for (int i = 0; i < n; ++i)
        row_cols[i] = std::move(r[i].deps);
    color_.assign(n, -1);
    std::vector<int> mark;
    for (int j = 0; j < n; ++j) {
        for (SparseMatrix::InnerIterator it(pattern_, j); it; ++it)
            for (int k : row_cols[it.row()])
                if (color_[k] >= 0) {
                    if (static_cast<int>(mark.size()) <= color_[k])
                        mark.resize(color_[k] + 1, -1);
                    mark[color_[k]] = j;
                }
        int c = 0;
        while (c < static_cast<int>(mark.size()) && mark[c] == j)
            ++c;
        color_[j] = c;
        num_colors_ = std::max(num_colors_, c + 1);
    }
    entries_.assign(num_colors_, {});
    color_columns_.assign(num_colors_, {});
    for (int j = 0; j < n; ++j) {
        color_columns_[color_[j]].push_back(j);
        for (int p = pattern_.outerIndexPtr()[j]; p < pattern_.outerIndexPtr()[j + 1]; ++p)
            entries_[color_[j]].emplace_back(pattern_.innerIndexPtr()[p], p);
    }
}

void JacobianAssembler::assemble(std::span<const double> x, std::vector<double>& r, SparseMatrix& J,
                                 JacobianMode mode) const
{
    const int n = problem_->size();
    J = pattern_;
    double* val = J.valuePtr();
    r = problem_->residual(x);
    if (mode == JacobianMode::autodiff) {
        std::vector<Dual> xd(n), rd(n);
        for (int c = 0; c < num_colors_; ++c) {
            for (int k = 0; k < n; ++k)
                xd[k] = Dual(x[k], 0.0);
            for (int j : color_columns_[c])
                xd[j].d = 1.0;
            problem_->residual<Dual>(xd, rd);
            for (const auto& [row, p] : entries_[c])
                val[p] = rd[row].d;
        }
        return;
    }
    std::vector<double> xp(x.begin(), x.end()), rp(n), eps(n);
    for (int c = 0; c < num_colors_; ++c) {
        for (int j : color_columns_[c]) {
            eps[j] = 1e-8 * std::max(1.0, std::abs(x[j]));
            xp[j] = x[j] + eps[j];
        }
        problem_->residual<double>(xp, rp);
        for (int j : color_columns_[c])
            for (int p = J.outerIndexPtr()[j]; p < J.outerIndexPtr()[j + 1]; ++p) {
                const int row = J.innerIndexPtr()[p];
                val[p] = (rp[row] - r[row]) / eps[j];
            }
        for (int j : color_columns_[c])
            xp[j] = x[j];
    }
}

} // namespace stagbox
