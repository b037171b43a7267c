#pragma once

#include "jacobian.hpp"
#include "linear_solver.hpp"

#include <iosfwd>
#include <vector>

namespace stagbox {

struct NewtonConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_iterations = 25;
    JacobianMode jacobian = JacobianMode::autodiff;
    bool line_search = false;
    bool equilibrate = false;

    void validate() const;

    friend bool operator==(const NewtonConfig&, const NewtonConfig&) = default;
};

struct NewtonReport {
    std::vector<double> residual_norms; // one per evaluated state, the initial one first
    std::vector<double> update_norms;   // one per Newton update
    int iterations = 0;
    bool converged = false;
};

//! Newton iteration on the coupled residual, starting from and overwriting x.
//! Throws NonConvergenceError if the iteration limit is reached.
NewtonReport newton_solve(const JacobianAssembler& assembler, std::vector<double>& x, const NewtonConfig& config);

//! Iteration log as CSV: iteration, residual norm, update norm.
void write_newton_csv(std::ostream& os, const NewtonReport& report);

} // namespace stagbox
