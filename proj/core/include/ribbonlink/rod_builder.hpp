#pragma once

#include "ribbonlink/curve.hpp"
#include "ribbonlink/euler.hpp"

#include <functional>

namespace ribbonlink {

struct FrameAt {
  Vec3 t;   // unit tangent
  Vec3 d1;  // director, projected onto the normal plane of the sampled tangent afterwards
};
using FrameFn = std::function<FrameAt(double)>;

// Open rod of the given arclength with n samples. Positions integrate the tangent by composite
// Simpson over `substeps` panels per sample interval.
FramedCurve build_rod(const FrameFn& frame, double length, std::size_t n, const Vec3& origin = Vec3::Zero(),
                      int substeps = 8);

// Frame from Euler angle profiles; angles(s) returns (phi, psi, theta).
FrameFn euler_frame_fn(std::function<Vec3(double)> angles, const EulerBasis& basis);

// Rod with the given unit tangent profile and d1 parallel transported from d1_start, then
// rotated about the tangent by twist(s) radians.
FramedCurve build_rod_transport(const std::function<Vec3(double)>& tangent, double length, std::size_t n,
                                const Vec3& d1_start, const std::function<double(double)>& twist = {},
                                const Vec3& origin = Vec3::Zero(), int substeps = 8);

// Endpoint of the centerline with the given tangent profile (same quadrature as build_rod).
Vec3 integrate_tangent(const std::function<Vec3(double)>& tangent, double a, double b, int panels);

// C-infinity step from 0 at x <= 0 to 1 at x >= 1.
double smooth_step(double x);

}  // namespace ribbonlink
