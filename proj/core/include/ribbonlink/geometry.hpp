#pragma once

#include "ribbonlink/types.hpp"

namespace ribbonlink::geom {

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

// Unit vector perpendicular to n (deterministic choice).
Vec3 any_perpendicular(const Vec3& n);

// Oriented solid angle of the spherical triangle spanned by a, b, c as seen from the
// origin (Van Oosterom-Strackee). Inputs need not be unit length.
double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);

// Same for unit vectors; cheaper and used for tantrix polygons.
double unit_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);

// Oriented solid angle subtended at the origin by the parallelogram swept by
// x = p(u) - q(v), p on segment p0p1 and q on segment q0q1. The Gauss linking
// integrand over the two segments integrates to minus this value over 4*pi.
double segment_pair_solid_angle(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

// Rotates v by the minimal rotation taking unit vector from onto unit vector to.
Vec3 transport(const Vec3& v, const Vec3& from, const Vec3& to);

// Signed angle from a to b about the axis (a and b are projected onto its normal plane).
double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis);

// Rodrigues rotation of v about unit axis k by angle.
Vec3 rotate(const Vec3& v, const Vec3& k, double angle);

struct SegmentDistance {
  double distance;
  double u;  // parameter on the first segment in [0, 1]
  double v;  // parameter on the second segment in [0, 1]
};

// Exact minimum distance between segments p0p1 and q0q1.
SegmentDistance segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

}  // namespace ribbonlink::geom
