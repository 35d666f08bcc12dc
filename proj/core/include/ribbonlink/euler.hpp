#pragma once

#include "ribbonlink/curve.hpp"
#include "ribbonlink/homotopy.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ribbonlink {

// Love's convention: (d1, d2, d3) = Rz(psi) Ry(theta) Rz(phi) applied to (e1, e2, e3).
struct EulerBasis {
  Vec3 e1, e2, e3;
};

// Right-handed basis with the given e3; e1 is the projection of x (or y when e3 is near x).
EulerBasis euler_basis(const Vec3& e3);

struct EulerAngles {
  EulerBasis basis;
  std::vector<double> s;
  std::vector<double> phi, psi, theta;  // unwrapped along s
  std::vector<bool> singular;           // theta within the singular tolerance of pi
  double chi(std::size_t i) const { return phi[i] + psi[i]; }
};

// Inverts the Euler parametrization along the samples. At theta = 0 only phi + psi is
// determined: psi is carried by continuity and the remainder assigned to phi.
// Throws PolarSingularity when any theta exceeds pi - tol.sing, unless allow_singular.
EulerAngles extract_euler(const DirectorFrame& frame, const std::vector<double>& s, const Vec3& e3,
                          const Tolerances& tol = default_tolerances(), bool allow_singular = false);
EulerAngles extract_euler(const FramedCurve& rod, const Vec3& e3, const Tolerances& tol = default_tolerances());

// Frame from the angles.
void euler_frame(double phi, double psi, double theta, const EulerBasis& b, Vec3& d1, Vec3& d2, Vec3& d3);

// Largest deviation of the reconstructed frame from the input at non-singular samples.
double reconstruction_error(const EulerAngles& a, const DirectorFrame& frame);

// phi + psi at s = L minus at s = 0, in radians.
double end_rotation_euler(const FramedCurve& rod, const Vec3& e3, const Tolerances& tol = default_tolerances());

// Sum of the lambda-integrals of d_lambda d1 . d2 at s = L and s = 0. With the end tangents
// fixed the integrand is the rotation rate of d1 about v, so each slice step contributes the
// exact signed angle between consecutive d1. Throws NotA2Class, or GridTooCoarse when a step
// exceeds pi / 2 or the every-other-slice sum differs by more than 1e-3.
double end_rotation_homotopy(const Homotopy& h);

// Open writhe and twist (turns) from the angle profiles, with consecutive tangents joined by great
// circles. They add up to the end rotation over 2 pi.
double euler_writhe(const EulerAngles& a);
double euler_twist(const EulerAngles& a);

// Sum of wrapped increments of phi + psi around the boundary of [0, L] x [0, 1] (radians).
struct Circulation {
  double value = 0.0;
  double max_step = 0.0;
};
Circulation euler_circulation(const Homotopy& h, const Vec3& e3, const Tolerances& tol = default_tolerances());

// Single-integral writhe relative to direction v (turns). The integrand is summed as the
// solid angle of the geodesic triangles (v, t_i, t_i+1), which is exact for the tantrix polygon.
double fuller_open_writhe(const Tantrix& t, const Vec3& v, const Tolerances& tol = default_tolerances());

// Derivative of the single-integral integrand along the rotation of v about omega, analytic
// form and centered finite difference with step h.
struct RotationDerivative {
  double analytic = 0.0;
  double finite_difference = 0.0;
};
RotationDerivative rotation_derivative(const Vec3& v, const Vec3& omega, const Vec3& t, const Vec3& tdot, double h = 1e-4);

struct Icosphere {
  std::vector<Vec3> vertices;
  std::vector<std::vector<std::size_t>> neighbors;
};
// Subdivided icosahedron with 10 * 4^level + 2 vertices.
Icosphere icosphere(int level);

struct ComponentSummary {
  int id = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double max_deviation = 0.0;
};

struct SphereScan {
  std::vector<Vec3> v;
  std::vector<double> f;
  std::vector<int> component;  // -1 inside the exclusion band
  std::vector<bool> in_band;
  double band_radius = 0.0;    // radians
  std::vector<ComponentSummary> components;
  double max_deviation() const;
};

// f(v) over the icosphere; directions within band_deg of the polyline {-t} are excluded and
// the rest flood-filled into components. Throws EmptyComponent if nothing is left.
SphereScan scan_v(const Tantrix& t, int level, double band_deg = 2.0);

std::string scan_csv(const SphereScan& scan);

}  // namespace ribbonlink
