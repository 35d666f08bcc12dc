#pragma once

#include "ribbonlink/curve.hpp"

#include <cstddef>
#include <functional>
#include <utility>

namespace ribbonlink {

// Closed curve through n distinct samples of a 2 pi periodic parametrization, with s the
// cumulative chord length and d1 supplied per parameter value.
FramedCurve sample_closed(const std::function<Vec3(double)>& r, const std::function<Vec3(double)>& d1, std::size_t n);

// Unit-speed circle in the e1e2-plane; d1 starts as the outward normal and makes `turns`
// revolutions about the tangent.
FramedCurve circle(double radius, std::size_t n, int turns = 0, const Vec3& center = Vec3::Zero());

// Helix wound q times around a torus with radii R and a; d1 is the principal normal.
FramedCurve closed_helix(double R, double a, int q, std::size_t n);

// Open helix along e3 with d1 the principal normal.
FramedCurve open_helix(double radius, double rise_per_turn, double turns, std::size_t n);

// Straight rod along e3 with d1 making `turns` uniform revolutions.
FramedCurve twisted_line(double length, double turns, std::size_t n);

// (2,3) torus knot with d1 the principal normal.
FramedCurve trefoil(std::size_t n);

// Figure-eight knot with d1 the principal normal.
FramedCurve figure_eight(std::size_t n);

using CurvePair = std::pair<FramedCurve, FramedCurve>;

// Unit circle in the e1e2-plane and unit circle in the e1e3-plane centered at (1, 0, 0).
CurvePair hopf_pair(std::size_t n);
// Unit circle and a torus curve that winds twice around it.
CurvePair double_hopf_pair(std::size_t n);
// Two unit circles on a common axis 10 apart, offset laterally.
CurvePair unlinked_pair(std::size_t n);

}  // namespace ribbonlink
