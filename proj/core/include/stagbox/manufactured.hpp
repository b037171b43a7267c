#pragma once

#include "geometry.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace stagbox {

//! Closed-form coupled Navier-Stokes / Darcy solution on (0,1)x(1,2) over (0,1)^2
//! with a full, x-dependent permeability tensor.
struct ManufacturedCase {
    double omega = std::numbers::pi;
    double c = 0.9;
    double mu = 1.0;
    double rho = 1.0;
    double alpha = 1.0;

    Rect ff_domain() const { return {0.0, 1.0, 1.0, 2.0}; }
    Rect pm_domain() const { return {0.0, 0.0, 1.0, 1.0}; }
    Segment interface() const { return {{0.0, 1.0}, {1.0, 1.0}}; }

    Vec2 v_ff(const Vec2& p) const;
    double p_ff(const Vec2& p) const;
    Vec2 v_pm(const Vec2& p) const;
    double p_pm(const Vec2& p) const;
    double q_ff(const Vec2& p) const;
    Vec2 f(const Vec2& p) const;
    double q_pm(const Vec2& p) const;
    Mat2 K(const Vec2& p) const;

    //! Velocity gradient of v_ff: rows are components, columns derivatives.
    Mat2 grad_v_ff(const Vec2& p) const;
    Vec2 grad_p_pm(const Vec2& p) const;
    //! Normal stress n.(rho v v^T - mu (grad v + grad v^T) + p I).n of the free flow
    //! without the inertial part, for a face with unit normal e_d.
    double ff_normal_stress(const Vec2& p, int d) const;
    //! Inhomogeneity g of the slip condition (-(grad v + grad v^T) n - beta v).t = g at y = 1.
    double slip_source(const Vec2& p) const;
};

//! Evaluates a named exact field: v_ff, p_ff, v_pm, p_pm, q_ff, f, q_pm, K.
//! Vectors return 2 values, K returns 4 (row-major). Unknown names raise InvalidInput.
std::vector<double> eval_exact(const ManufacturedCase& mc, const std::string& field, const Vec2& point);

} // namespace stagbox
