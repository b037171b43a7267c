#pragma once

#include "coupling.hpp"
#include "grid_generators.hpp"
#include "manufactured.hpp"
#include "problem.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stagbox {

struct ErrorRow {
    int m = 0;
    double e_p_ff = 0.0;
    double e_vx = 0.0;
    double e_vy = 0.0;
    double e_p_pm = 0.0;
    bool converged = true;
};

struct ErrorReport {
    PmGridKind grid = PmGridKind::conforming;
    ProjectionKind projection = ProjectionKind::l2;
    std::vector<ErrorRow> rows;

    //! log2(e_m / e_{m+1}) for quantity q in {0: p_ff, 1: vx, 2: vy, 3: p_pm};
    //! row k holds the rate between rows k-1 and k (undefined for k = 0).
    double rate(std::size_t k, int q) const;
};

double error_value(const ErrorRow& row, int q);

//! Discrete L2 errors: pressures per control volume at its center (cell center,
//! porous vertex), velocities per face dual volume at the face center.
ErrorRow error_norms(const CoupledProblem& problem, std::span<const double> x, const ManufacturedCase& mc);

//! CSV with columns m, e_p_ff, r_p_ff, e_vx, r_vx, e_vy, r_vy, e_p_pm, r_p_pm.
void write_error_csv(std::ostream& os, const ErrorReport& report);

struct TotalVariation {
    double tv = 0.0;
    int sign_changes = 0;
};

//! TV = sum |v_k - v_{k-1}|; sign changes between strict signs, zeros inherit
//! the previous sign. Needs at least two values.
TotalVariation total_variation(std::span<const double> values);

} // namespace stagbox
