#include "ribbonlink/rod_builder.hpp"

#include "ribbonlink/geometry.hpp"

#include <cmath>

namespace ribbonlink {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  auto g = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
  return g(x) / (g(x) + g(1.0 - x));
}

Vec3 integrate_tangent(const std::function<Vec3(double)>& tangent, double a, double b, int panels) {
  const int m = panels + (panels % 2);
  const double h = (b - a) / m;
  Vec3 sum = tangent(a) + tangent(b);
  for (int k = 1; k < m; ++k) sum += (k % 2 ? 4.0 : 2.0) * tangent(a + k * h);
  return sum * h / 3.0;
}

namespace {

std::vector<Vec3> positions(const std::function<Vec3(double)>& tangent, double length, std::size_t n,
                            const Vec3& origin, int substeps) {
  std::vector<Vec3> r(n);
  r[0] = origin;
  const double h = length / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double a = h * static_cast<double>(i - 1);
    r[i] = r[i - 1] + integrate_tangent(tangent, a, a + h, substeps);
  }
  return r;
}

}  // namespace

FramedCurve build_rod(const FrameFn& frame, double length, std::size_t n, const Vec3& origin, int substeps) {
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "rod needs at least two samples");
  const auto r = positions([&](double s) { return frame(s).t; }, length, n, origin, substeps);
  std::vector<Sample> out(n);
  const double h = length / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? length : h * static_cast<double>(i);
    out[i] = {s, r[i], frame(s).d1};
  }
  return with_projected_directors(FramedCurve(std::move(out), false, length));
}

FrameFn euler_frame_fn(std::function<Vec3(double)> angles, const EulerBasis& basis) {
  return [angles = std::move(angles), basis](double s) {
    const Vec3 a = angles(s);
    Vec3 d1, d2, d3;
    euler_frame(a.x(), a.y(), a.z(), basis, d1, d2, d3);
    return FrameAt{d3, d1};
  };
}

FramedCurve build_rod_transport(const std::function<Vec3(double)>& tangent, double length, std::size_t n,
                                const Vec3& d1_start, const std::function<double(double)>& twist,
                                const Vec3& origin, int substeps) {
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "rod needs at least two samples");
  const auto r = positions(tangent, length, n, origin, substeps);
  const double h = length / static_cast<double>(n - 1);
  std::vector<Sample> out(n);
  Vec3 t_prev = tangent(0.0);
  Vec3 d = (d1_start - d1_start.dot(t_prev) * t_prev).normalized();
  double tw_prev = twist ? twist(0.0) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? length : h * static_cast<double>(i);
    const Vec3 t = tangent(s);
    if (i > 0) {
      d = geom::transport(d, t_prev, t);
      const double tw = twist ? twist(s) : 0.0;
      d = geom::rotate(d, t, tw - tw_prev);
      tw_prev = tw;
    }
    d = (d - d.dot(t) * t).normalized();
    out[i] = {s, r[i], d};
    t_prev = t;
  }
  return with_projected_directors(FramedCurve(std::move(out), false, length));
}

}  // namespace ribbonlink
