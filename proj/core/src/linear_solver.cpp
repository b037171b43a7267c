#include "stagbox/linear_solver.hpp"

#include "stagbox/errors.hpp"

#include <Eigen/SparseLU>
#ifdef STAGBOX_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <fmt/format.h>

namespace stagbox {

namespace {

using Vector = Eigen::VectorXd;

template<class Solver>
bool factorize(Solver& solver, const SparseMatrix& A)
{
    solver.analyzePattern(A);
    solver.factorize(A);
    return solver.info() == Eigen::Success;
}

std::string describe_sparselu_failure(const SparseMatrix& A)
{
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() == Eigen::Success)
        return {};
    return lu.lastErrorMessage();
}

} // namespace

std::string linear_solver_backend()
{
#ifdef STAGBOX_HAVE_UMFPACK
    return "umfpack";
#else
    return "sparselu";
#endif
}

LinearSolveResult linear_solve(const SparseMatrix& A_in, std::span<const double> b_in,
                               const LinearSolveOptions& options)
{
    const int n = static_cast<int>(A_in.rows());
    if (A_in.cols() != n || static_cast<int>(b_in.size()) != n)
        throw SolverError("linear system is not square or the right-hand side has the wrong size");
    const Eigen::Map<const Vector> b0(b_in.data(), n);
    SparseMatrix A = A_in;
    Vector b = b0;
    Vector scale = Vector::Ones(n);
    if (options.equilibrate) {
        Vector row_max = Vector::Zero(n);
        for (int j = 0; j < A.outerSize(); ++j)
            for (SparseMatrix::InnerIterator it(A, j); it; ++it)
                row_max[it.row()] = std::max(row_max[it.row()], std::abs(it.value()));
        for (int i = 0; i < n; ++i)
            scale[i] = row_max[i] > 0.0 ? 1.0 / row_max[i] : 1.0;
        A = scale.asDiagonal() * A;
        b = scale.asDiagonal() * b;
    }
    A.makeCompressed();

    LinearSolveResult out;
    Vector x;
    auto solve_with = [&](auto& solver) {
        x = solver.solve(b);
        for (int k = 0; k < options.refinement_steps; ++k) {
            const Vector res = b - A * x;
            const double rel = b.norm() > 0.0 ? res.norm() / b.norm() : res.norm();
            if (rel < 0.01 * options.tolerance)
                break;
            x += solver.solve(res);
        }
    };
#ifdef STAGBOX_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrix> umf;
    if (factorize(umf, A)) {
        out.backend = "umfpack";
        solve_with(umf);
    }
    else
#endif
    {
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        if (!factorize(lu, A)) {
            const std::string msg = describe_sparselu_failure(A);
            throw SolverError("sparse factorization failed: " + (msg.empty() ? std::string("numerically singular") : msg));
        }
        out.backend = "sparselu";
        solve_with(lu);
    }
    if (!x.allFinite())
        throw SolverError("linear solve produced non-finite values");
    const double bn = b0.norm();
    const Vector res = b0 - A_in * x;
    out.relative_residual = bn > 0.0 ? res.norm() / bn : res.norm();
    if (!(out.relative_residual < options.tolerance))
        throw SolverError(fmt::format("linear solve residual {:.3e} exceeds tolerance {:.1e}", out.relative_residual,
                                      options.tolerance));
    out.x.assign(x.data(), x.data() + n);
    return out;
}

} // namespace stagbox
