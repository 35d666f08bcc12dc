#include "ribbonlink/generators.hpp"

#include <cmath>

namespace ribbonlink {

namespace {

struct Jet {
  Vec3 r, dr, ddr;
};

// Principal normal from the first two derivatives.
Vec3 principal_normal(const Jet& j) {
  const Vec3 t = j.dr.normalized();
  return (j.ddr - j.ddr.dot(t) * t).normalized();
}

FramedCurve frenet_closed(const std::function<Jet(double)>& jet, std::size_t n) {
  return sample_closed([&](double u) { return jet(u).r; }, [&](double u) { return principal_normal(jet(u)); }, n);
}

}  // namespace

FramedCurve sample_closed(const std::function<Vec3(double)>& r, const std::function<Vec3(double)>& d1, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "closed curve needs at least three samples");
  std::vector<Sample> out(n + 1);
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t k = i % n;
    const double u = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const Vec3 p = r(u);
    if (i > 0) s += (p - out[i - 1].r).norm();
    out[i] = {s, p, d1(u)};
  }
  return with_projected_directors(FramedCurve(std::move(out), true));
}

FramedCurve circle(double radius, std::size_t n, int turns, const Vec3& center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "radius must be positive");
  return sample_closed([&](double u) { return Vec3(center + radius * Vec3(std::cos(u), std::sin(u), 0.0)); },
                       [&](double u) {
                         const double a = static_cast<double>(turns) * u;
                         return Vec3(std::cos(a) * Vec3(std::cos(u), std::sin(u), 0.0) - std::sin(a) * Vec3::UnitZ());
                       },
                       n);
}

FramedCurve closed_helix(double R, double a, int q, std::size_t n) {
  if (!(R > a && a > 0.0) || q < 1) throw Error(ErrorCode::ParamOutOfRange, "closed helix needs R > a > 0 and q >= 1");
  const double qd = q;
  return frenet_closed(
      [&](double u) {
        const double c = std::cos(qd * u), s = std::sin(qd * u);
        const double rho = R + a * c, drho = -a * qd * s, ddrho = -a * qd * qd * c;
        const double cu = std::cos(u), su = std::sin(u);
        return Jet{{rho * cu, rho * su, a * s},
                   {drho * cu - rho * su, drho * su + rho * cu, a * qd * c},
                   {ddrho * cu - 2.0 * drho * su - rho * cu, ddrho * su + 2.0 * drho * cu - rho * su, -a * qd * qd * s}};
      },
      n);
}

FramedCurve open_helix(double radius, double rise_per_turn, double turns, std::size_t n) {
  if (!(radius > 0.0) || !(turns > 0.0) || n < 2) throw Error(ErrorCode::ParamOutOfRange, "invalid open helix parameters");
  const double c = rise_per_turn / kTwoPi;
  const double speed = std::sqrt(radius * radius + c * c);
  const double umax = kTwoPi * turns;
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = umax * static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = {speed * u, {radius * std::cos(u), radius * std::sin(u), c * u}, {-std::cos(u), -std::sin(u), 0.0}};
  }
  return with_projected_directors(FramedCurve(std::move(out), false));
}

FramedCurve twisted_line(double length, double turns, std::size_t n) {
  if (!(length > 0.0) || n < 2) throw Error(ErrorCode::ParamOutOfRange, "invalid twisted line parameters");
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = length * static_cast<double>(i) / static_cast<double>(n - 1);
    const double a = kTwoPi * turns * s / length;
    out[i] = {s, {0.0, 0.0, s}, {std::cos(a), std::sin(a), 0.0}};
  }
  return FramedCurve(std::move(out), false);
}

FramedCurve trefoil(std::size_t n) {
  return frenet_closed(
      [](double u) {
        return Jet{{std::sin(u) + 2.0 * std::sin(2.0 * u), std::cos(u) - 2.0 * std::cos(2.0 * u), -std::sin(3.0 * u)},
                   {std::cos(u) + 4.0 * std::cos(2.0 * u), -std::sin(u) + 4.0 * std::sin(2.0 * u), -3.0 * std::cos(3.0 * u)},
                   {-std::sin(u) - 8.0 * std::sin(2.0 * u), -std::cos(u) + 8.0 * std::cos(2.0 * u), 9.0 * std::sin(3.0 * u)}};
      },
      n);
}

FramedCurve figure_eight(std::size_t n) {
  return frenet_closed(
      [](double u) {
        const double c2 = std::cos(2.0 * u), s2 = std::sin(2.0 * u);
        const double c3 = std::cos(3.0 * u), s3 = std::sin(3.0 * u);
        const double rho = 2.0 + c2, drho = -2.0 * s2, ddrho = -4.0 * c2;
        return Jet{{rho * c3, rho * s3, std::sin(4.0 * u)},
                   {drho * c3 - 3.0 * rho * s3, drho * s3 + 3.0 * rho * c3, 4.0 * std::cos(4.0 * u)},
                   {ddrho * c3 - 6.0 * drho * s3 - 9.0 * rho * c3, ddrho * s3 + 6.0 * drho * c3 - 9.0 * rho * s3,
                    -16.0 * std::sin(4.0 * u)}};
      },
      n);
}

namespace {

FramedCurve planar_circle(const Vec3& center, const Vec3& e1, const Vec3& e2, double radius, std::size_t n) {
  const Vec3 normal = e1.cross(e2);
  return sample_closed([&](double u) { return Vec3(center + radius * (std::cos(u) * e1 + std::sin(u) * e2)); },
                       [&](double) { return normal; }, n);
}

}  // namespace

CurvePair hopf_pair(std::size_t n) {
  return {planar_circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, n),
          planar_circle(Vec3::UnitX(), Vec3::UnitX(), Vec3::UnitZ(), 1.0, n)};
}

CurvePair double_hopf_pair(std::size_t n) {
  const double R = 1.0, a = 0.4;
  FramedCurve core = planar_circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), R, n);
  FramedCurve wind = frenet_closed(
      [&](double u) {
        const double c = std::cos(2.0 * u), s = std::sin(2.0 * u);
        const double rho = R + a * c, drho = -2.0 * a * s, ddrho = -4.0 * a * c;
        const double cu = std::cos(u), su = std::sin(u);
        return Jet{{rho * cu, rho * su, a * s},
                   {drho * cu - rho * su, drho * su + rho * cu, 2.0 * a * c},
                   {ddrho * cu - 2.0 * drho * su - rho * cu, ddrho * su + 2.0 * drho * cu - rho * su, -4.0 * a * s}};
      },
      n);
  return {std::move(core), std::move(wind)};
}

CurvePair unlinked_pair(std::size_t n) {
  return {planar_circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, n),
          planar_circle(Vec3(3.0, 0.0, 10.0), Vec3::UnitX(), Vec3::UnitY(), 1.0, n)};
}

}  // namespace ribbonlink
