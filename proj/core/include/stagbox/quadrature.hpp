#pragma once

#include "geometry.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>

namespace stagbox {

enum class QuadratureKind { midpoint, fifth_order };

std::string to_string(QuadratureKind kind);
QuadratureKind parse_quadrature_kind(const std::string& name);

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

//! 3x3 Gauss-Legendre rule on an axis aligned rectangle (exact to degree 5 per direction).
double integrate_rect(const ScalarField& f, const Rect& r, QuadratureKind kind = QuadratureKind::fifth_order);
Vec2 integrate_rect(const VectorField& f, const Rect& r, QuadratureKind kind = QuadratureKind::fifth_order);

//! Seven point symmetric rule on a triangle, exact to degree 5.
double integrate_triangle(const ScalarField& f, const Vec2& a, const Vec2& b, const Vec2& c,
                          QuadratureKind kind = QuadratureKind::fifth_order);

//! Star-shaped polygon, fan-triangulated from its first corner.
double integrate_polygon(const ScalarField& f, std::span<const Vec2> corners,
                         QuadratureKind kind = QuadratureKind::fifth_order);

} // namespace stagbox
