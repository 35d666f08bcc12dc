#pragma once

#include "ribbonlink/curve.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ribbonlink {

enum class Quantity { Twist, Writhe, Link, OpenTwist, OpenWrithe, OpenLink, EndRotation };
enum class Method { Quadrature, PolygonalExact, ProjectionAverage, FullerSingleIntegral, EulerAngles, CrossingCount };

const char* to_string(Quantity q) noexcept;
const char* to_string(Method m) noexcept;

// Angle-valued quantities are in turns, except EndRotation which is in radians.
struct InvariantReport {
  Quantity quantity = Quantity::Writhe;
  double value = 0.0;
  Method method = Method::PolygonalExact;
  std::optional<double> residual;
  std::optional<double> stderr_estimate;
  std::optional<double> error_bound;
  std::size_t n_samples = 0;
  std::size_t n_directions = 0;
  std::size_t n_rejected = 0;
  std::optional<std::uint64_t> seed;
};

// Twist in turns over [a, b]: summed rotation of d1 relative to parallel transport
// along the sampled tangent, with partial segments weighted linearly.
double twist(const FramedCurve& c, double a, double b);
double twist(const FramedCurve& c);

// Gauss linking number of two closed polylines (exact for the polygons).
double gauss_link(const FramedCurve& c1, const FramedCurve& c2, const Tolerances& tol = default_tolerances());
double gauss_link(const std::vector<Vec3>& p1, const std::vector<Vec3>& p2);

// Exact writhe of the closed sample polygon.
double writhe_polygonal(const FramedCurve& c);
double writhe_polygonal(const std::vector<Vec3>& polygon);

// Trapezoidal double integral over the sample index with the diagonal band |i - j| < 4 removed.
// The leading term of the removed band is added back and reported as error_bound.
InvariantReport writhe_quadrature(const FramedCurve& c);

// Signed crossing count of the projection along unit direction p.
int directional_writhing(const std::vector<Vec3>& polygon, const Vec3& p);
int directional_writhing(const FramedCurve& c, const Vec3& p);

InvariantReport writhe_projection_average(const FramedCurve& c, std::size_t n_directions, std::uint64_t seed);

// Half the signed sum of crossings between the two projected polygons.
int linking_by_crossings(const std::vector<Vec3>& p1, const std::vector<Vec3>& p2, const Vec3& p);
int linking_by_crossings(const FramedCurve& c1, const FramedCurve& c2, const Vec3& p);

// Enclosed (winding-weighted) area of a closed tantrix in [0, 4 pi).
double tantrix_area(const Tantrix& t);

// Distance of (A / 2 pi - 1 - Wr) from the nearest even integer.
double fuller_first_residual(double area, double writhe);

// Wr(r1) - Wr(r0) from the two tantrices on a common grid. The integrand is summed as the
// signed area of the spherical quadrilaterals swept by the geodesic between t0 and t1.
double fuller_difference(const Tantrix& t0, const Tantrix& t1, const Tolerances& tol = default_tolerances());

double open_twist(const FramedCurve& rod);

struct CwfResult {
  double link = 0.0;
  double twist = 0.0;
  double writhe = 0.0;
  double residual = 0.0;
  double epsilon = 0.0;
  std::size_t n_samples = 0;
};

// Lk(r, r + eps d1) - Tw - Wr for a closed ribbon. eps starts at 1e-3 times the length and is
// halved until the push-off clears the centerline.
CwfResult check_cwf(const FramedCurve& ribbon, const Tolerances& tol = default_tolerances());

// Closed push-off polygon r + eps d1.
std::vector<Vec3> pushoff(const FramedCurve& c, double eps);

// Linking number of a closed ribbon with its push-off, using the automatic eps rule.
double ribbon_link(const FramedCurve& ribbon, double* eps_used = nullptr);

}  // namespace ribbonlink
