#include "ribbonlink/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ribbonlink::geom {

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

Vec3 any_perpendicular(const Vec3& n) {
  const Vec3 axis = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (axis - axis.dot(n) * n).normalized();
}

double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = a.norm(), lb = b.norm(), lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(num, den);
}

double unit_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + a.dot(c) + b.dot(c);
  return 2.0 * std::atan2(num, den);
}

double segment_pair_solid_angle(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 v0 = p0 - q0;
  const Vec3 v1 = p1 - q0;
  const Vec3 v2 = p1 - q1;
  const Vec3 v3 = p0 - q1;
  return solid_angle(v0, v1, v2) + solid_angle(v0, v2, v3);
}

Vec3 transport(const Vec3& v, const Vec3& from, const Vec3& to) {
  const Vec3 w = from.cross(to);
  const double c = from.dot(to);
  if (c <= -1.0 + 1e-15) return -v;  // undefined rotation axis; callers reject antipodal steps
  return v + w.cross(v) + w.cross(w.cross(v)) / (1.0 + c);
}

double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis) {
  return std::atan2(axis.dot(a.cross(b)), a.dot(b) - a.dot(axis) * b.dot(axis));
}

Vec3 rotate(const Vec3& v, const Vec3& k, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + k.cross(v) * s + k * (k.dot(v)) * (1.0 - c);
}

SegmentDistance segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double tiny = 1e-300;
  if (a <= tiny && e <= tiny) {
    return {r.norm(), 0.0, 0.0};
  }
  if (a <= tiny) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= tiny) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 diff = (p0 + s * d1) - (q0 + t * d2);
  return {diff.norm(), s, t};
}

}  // namespace ribbonlink::geom
