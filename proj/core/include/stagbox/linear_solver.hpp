#pragma once

#include "jacobian.hpp"

#include <span>
#include <string>
#include <vector>

namespace stagbox {

struct LinearSolveOptions {
    bool equilibrate = false;     // scale rows by their max-norm before factorizing
    double tolerance = 1e-10;     // required ||Ax - b|| / ||b||
    int refinement_steps = 3;
};

struct LinearSolveResult {
    std::vector<double> x;
    double relative_residual = 0.0;
    std::string backend;
};

//! Sparse direct solve (UMFPACK when available, SparseLU otherwise) with
//! iterative refinement. Throws SolverError on singular systems or if the
//! residual tolerance is not met.
LinearSolveResult linear_solve(const SparseMatrix& A, std::span<const double> b,
                               const LinearSolveOptions& options = {});

//! Name of the sparse direct backend compiled in.
std::string linear_solver_backend();

} // namespace stagbox
