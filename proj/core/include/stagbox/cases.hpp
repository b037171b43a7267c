#pragma once

#include "coupling.hpp"
#include "grid_generators.hpp"
#include "manufactured.hpp"
#include "problem.hpp"

#include <memory>

namespace stagbox {

struct ManufacturedSetup {
    PmGridKind grid = PmGridKind::conforming;
    ProjectionKind projection = ProjectionKind::l2;
    int level = 0;
    int base_cells = 5;             // free-flow cells per direction at level 0
    double interface_factor = 0.95; // simplex grids only
    bool shift_normal = false;      // also offset box-conforming vertices normal to the interface
    bool inertia = true;
    double zeta = 0.5;
    bool top_pressure = false;      // exact normal stress on the top boundary instead of velocity
};

//! Coupled problem of the manufactured solution on refinement level m
//! (free-flow cells per direction = base_cells * 2^m).
std::unique_ptr<CoupledProblem> build_manufactured_problem(const ManufacturedCase& mc, const ManufacturedSetup& setup);

//! Channel with a porous block: parabolic inflow on top, outflow at the bottom,
//! no-slip on the left and symmetry on the right. The block touches the right
//! boundary, its other three sides are coupled.
struct ObstacleSetup {
    Rect channel{0.0, 0.0, 1.0, 2.0};
    Rect block{0.2, 0.8, 1.0, 1.6};
    double dx = 1.0 / 20.0, dy = 1.0 / 5.0; // free-flow spacing at level 0
    int level = 0;
    PmGridKind grid = PmGridKind::box_conforming;
    ProjectionKind projection = ProjectionKind::l2;
    double interface_factor = 0.95;
    double rho = 1.2, mu = 1.8e-5;
    double alpha_bjs = 1.0;
    double zeta = 1.0;
    double permeability = 1e-9;
    double inflow_velocity = 0.1; // peak of the parabolic profile, directed downwards
    bool inertia = true;
};

std::unique_ptr<CoupledProblem> build_obstacle_problem(const ObstacleSetup& setup);

//! Free-flow faces on the top side of the block (x >= block.x0), ordered by x.
std::vector<int> obstacle_top_faces(const CoupledProblem& problem, const ObstacleSetup& setup);

//! Stokes channel above a porous bed, both driven by the same pressure drop
//! from left to right. Walls on top, no flow below the bed.
struct ForchheimerSetup {
    Rect bed{0.0, 0.0, 1.0, 0.5};
    double channel_height = 0.5;
    int nx = 20, ny = 10; // cells per subdomain
    double rho = 1.2, mu = 1.8e-5;
    double alpha_bjs = 1.0;
    double permeability = 1e-7;
    double c_forchheimer = 0.0;
    double pressure_drop = 1.0;
};

std::unique_ptr<CoupledProblem> build_forchheimer_problem(const ForchheimerSetup& setup);

//! Mass flow leaving the porous bed through its outlet side.
double forchheimer_bed_outflow(const CoupledProblem& problem, std::span<const double> x);

} // namespace stagbox
