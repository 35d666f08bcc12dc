#include "ribbonlink/invariants.hpp"

#include "ribbonlink/geometry.hpp"
#include "ribbonlink/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ribbonlink {

const char* to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Twist: return "Twist";
    case Quantity::Writhe: return "Writhe";
    case Quantity::Link: return "Link";
    case Quantity::OpenTwist: return "OpenTwist";
    case Quantity::OpenWrithe: return "OpenWrithe";
    case Quantity::OpenLink: return "OpenLink";
    case Quantity::EndRotation: return "EndRotation";
  }
  return "Unknown";
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Quadrature: return "Quadrature";
    case Method::PolygonalExact: return "PolygonalExact";
    case Method::ProjectionAverage: return "ProjectionAverage";
    case Method::FullerSingleIntegral: return "FullerSingleIntegral";
    case Method::EulerAngles: return "EulerAngles";
    case Method::CrossingCount: return "CrossingCount";
  }
  return "Unknown";
}

namespace {

void require_closed(const FramedCurve& c, const char* what) {
  if (!c.closed()) throw Error(ErrorCode::NotClosed, std::string(what) + " needs a closed curve");
}

struct Box {
  Vec3 lo, hi;
};

std::vector<Box> segment_boxes(const std::vector<Vec3>& poly) {
  const std::size_t n = poly.size();
  std::vector<Box> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = poly[i];
    const Vec3& c = poly[(i + 1) % n];
    b[i] = {a.cwiseMin(c), a.cwiseMax(c)};
  }
  return b;
}

double box_gap(const Box& x, const Box& y) {
  double g2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::max({0.0, x.lo[k] - y.hi[k], y.lo[k] - x.hi[k]});
    g2 += d * d;
  }
  return std::sqrt(g2);
}

// Minimum distance between two closed polygons.
double polygon_distance(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  const auto bp = segment_boxes(p);
  const auto bq = segment_boxes(q);
  std::vector<double> rows(p.size());
  parallel_for(p.size(), [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    const Vec3& a0 = p[i];
    const Vec3& a1 = p[(i + 1) % p.size()];
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (box_gap(bp[i], bq[j]) >= best) continue;
      best = std::min(best, geom::segment_distance(a0, a1, q[j], q[(j + 1) % q.size()]).distance);
    }
    rows[i] = best;
  });
  return *std::min_element(rows.begin(), rows.end());
}

double closed_length(const std::vector<Vec3>& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += (p[(i + 1) % p.size()] - p[i]).norm();
  return total;
}

struct Crossing {
  bool found = false;
  int sign = 0;
};

struct Projector {
  Vec3 p, a, b;
  explicit Projector(const Vec3& dir) : p(dir.normalized()), a(geom::any_perpendicular(p)), b(p.cross(a)) {}
  Eigen::Vector2d operator()(const Vec3& x) const { return {a.dot(x), b.dot(x)}; }
};

double cross2(const Eigen::Vector2d& u, const Eigen::Vector2d& v) { return u.x() * v.y() - u.y() * v.x(); }

constexpr double kRegularity = 1e-6;

void check_segment_direction(const Vec3& d, const Vec3& p) {
  const double n = d.norm();
  if (n == 0.0 || std::abs(d.dot(p)) / n > 1.0 - kRegularity) {
    throw Error(ErrorCode::IrregularProjection, "segment parallel to the projection direction");
  }
}

// Crossing of the projections of segments x0x1 and y0y1.
Crossing crossing(const Projector& pr, const Vec3& x0, const Vec3& x1, const Vec3& y0, const Vec3& y1) {
  const Eigen::Vector2d P0 = pr(x0), P1 = pr(x1), Q0 = pr(y0), Q1 = pr(y1);
  const Eigen::Vector2d dP = P1 - P0, dQ = Q1 - Q0;
  const double lp = dP.norm(), lq = dQ.norm();
  const double denom = cross2(dP, dQ);
  const Eigen::Vector2d w = Q0 - P0;
  if (std::abs(denom) <= kRegularity * lp * lq) {
    // Nearly parallel projections: irregular only if they overlap.
    const double off = std::abs(cross2(w, dP)) / lp;
    if (off > kRegularity * std::max(lp, lq)) return {};
    const double t0 = w.dot(dP) / (lp * lp);
    const double t1 = (Q1 - P0).dot(dP) / (lp * lp);
    if (std::max(t0, t1) < 0.0 || std::min(t0, t1) > 1.0) return {};
    throw Error(ErrorCode::IrregularProjection, "overlapping projected segments");
  }
  const double u = cross2(w, dQ) / denom;
  const double v = cross2(w, dP) / denom;
  constexpr double edge = 1e-9;
  if (u < -edge || u > 1.0 + edge || v < -edge || v > 1.0 + edge) return {};
  if (u < edge || u > 1.0 - edge || v < edge || v > 1.0 - edge) {
    throw Error(ErrorCode::IrregularProjection, "projected crossing at a vertex");
  }
  const Vec3 X = x0 + u * (x1 - x0);
  const Vec3 Y = y0 + v * (y1 - y0);
  const double hx = pr.p.dot(X), hy = pr.p.dot(Y);
  if (std::abs(hx - hy) <= 1e-12 * std::max({1.0, X.norm(), Y.norm()})) {
    throw Error(ErrorCode::IrregularProjection, "curves intersect along the projection direction");
  }
  const Vec3 tx = x1 - x0, ty = y1 - y0;
  const Vec3 over = hx > hy ? tx : ty;
  const Vec3 under = hx > hy ? ty : tx;
  return {true, over.cross(under).dot(pr.p) > 0.0 ? 1 : -1};
}

// Direction sampled uniformly on the sphere from two 53-bit uniforms.
Vec3 random_direction(std::mt19937_64& rng) {
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double z = 2.0 * uniform() - 1.0;
  const double phi = kTwoPi * uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

double twist(const FramedCurve& c, double a, double b) {
  const double eps = 1e-12 * std::max(1.0, std::abs(c.s_end() - c.s_begin()));
  if (a > b || a < c.s_begin() - eps || b > c.s_end() + eps) {
    throw Error(ErrorCode::IntervalOutOfRange, "twist interval outside the parameter range");
  }
  const DirectorFrame f = build_frame(c);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double s0 = c[i].s, s1 = c[i + 1].s;
    const double lo = std::max(a, s0), hi = std::min(b, s1);
    if (hi <= lo) continue;
    const Vec3 moved = geom::transport(f.d1[i], f.d3[i], f.d3[i + 1]);
    const double angle = geom::signed_angle(moved, f.d1[i + 1], f.d3[i + 1]);
    total += angle * (hi - lo) / (s1 - s0);
  }
  return total / kTwoPi;
}

double twist(const FramedCurve& c) { return twist(c, c.s_begin(), c.s_end()); }

double open_twist(const FramedCurve& rod) { return twist(rod, rod.s_begin(), rod.L()); }

double gauss_link(const std::vector<Vec3>& p1, const std::vector<Vec3>& p2) {
  const std::size_t n1 = p1.size(), n2 = p2.size();
  const double sum = ordered_sum(n1, [&](std::size_t i) {
    const Vec3& a0 = p1[i];
    const Vec3& a1 = p1[(i + 1) % n1];
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) row += geom::segment_pair_solid_angle(a0, a1, p2[j], p2[(j + 1) % n2]);
    return row;
  });
  return -sum / (4.0 * kPi);
}

double gauss_link(const FramedCurve& c1, const FramedCurve& c2, const Tolerances& tol) {
  require_closed(c1, "gauss_link");
  require_closed(c2, "gauss_link");
  const auto p1 = c1.polygon(), p2 = c2.polygon();
  const double scale = std::max(closed_length(p1), closed_length(p2));
  if (polygon_distance(p1, p2) <= tol.clearance_rel * scale) {
    throw Error(ErrorCode::CurvesTooClose, "curves closer than the clearance tolerance");
  }
  return gauss_link(p1, p2);
}

double writhe_polygonal(const std::vector<Vec3>& p) {
  const std::size_t n = p.size();
  const double sum = ordered_sum(n, [&](std::size_t i) {
    const Vec3& a0 = p[i];
    const Vec3& a1 = p[(i + 1) % n];
    double row = 0.0;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      row += geom::segment_pair_solid_angle(a0, a1, p[j], p[(j + 1) % n]);
    }
    return row;
  });
  return -sum / kTwoPi;
}

double writhe_polygonal(const FramedCurve& c) {
  require_closed(c, "writhe_polygonal");
  const auto cl = self_clearance(c);
  if (cl.distance <= default_tolerances().clearance_rel * c.polyline_length()) {
    throw Error(ErrorCode::SelfIntersecting, "segments " + std::to_string(cl.i) + " and " + std::to_string(cl.j));
  }
  return writhe_polygonal(c.polygon());
}

InvariantReport writhe_quadrature(const FramedCurve& c) {
  require_closed(c, "writhe_quadrature");
  const auto cl = self_clearance(c);
  if (cl.distance <= default_tolerances().clearance_rel * c.polyline_length()) {
    throw Error(ErrorCode::SelfIntersecting, "segments " + std::to_string(cl.i) + " and " + std::to_string(cl.j));
  }
  const std::size_t n = c.vertex_count();
  constexpr std::size_t band = 4;
  if (n < 2 * band + 2) throw Error(ErrorCode::TooFewSamples, "writhe_quadrature needs at least 10 vertices");
  // The integrand is parametrization invariant, so it is integrated over the sample index with
  // unit weights; derivatives with respect to the index use periodic central differences.
  const auto r = c.polygon();
  auto at = [&](std::size_t i, long k) {
    const long nn = static_cast<long>(n);
    return r[static_cast<std::size_t>(((static_cast<long>(i) + k) % nn + nn) % nn)];
  };
  auto stencil = [&](std::size_t i, const double* w, int half) {
    Vec3 d = Vec3::Zero();
    for (int k = -half; k <= half; ++k) d += w[k + half] * at(i, k);
    return d;
  };
  static const double D1[9] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  static const double D2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  static const double D3[9] = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0, -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};
  std::vector<Vec3> m1(n), m2(n), m3(n);
  for (std::size_t i = 0; i < n; ++i) {
    m1[i] = stencil(i, D1, 4);
    m2[i] = stencil(i, D2, 3);
    m3[i] = stencil(i, D3, 4);
  }
  const double sum = ordered_sum(n, [&](std::size_t i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (std::min(gap, n - gap) < band) continue;
      const Vec3 d = r[i] - r[j];
      const double dn = d.norm();
      row += m1[i].cross(m1[j]).dot(d) / (dn * dn * dn);
    }
    return row;
  });
  // Near the diagonal the integrand is C |u| with C = [r', r'', r'''] / (12 |r'|^3). The band
  // |u| < 3.5 contributes 3.5^2 C; the midpoint sum beyond it overshoots by C / 12.
  const double halfwidth = static_cast<double>(band) - 0.5;
  double correction = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double C = m1[i].dot(m2[i].cross(m3[i])) / (12.0 * std::pow(m1[i].norm(), 3));
    correction += C * (halfwidth * halfwidth - 1.0 / 12.0);
  }
  InvariantReport rep;
  rep.quantity = Quantity::Writhe;
  rep.method = Method::Quadrature;
  rep.value = (sum + correction) / (4.0 * kPi);
  rep.error_bound = std::abs(correction) / (4.0 * kPi);
  rep.n_samples = n;
  return rep;
}

int directional_writhing(const std::vector<Vec3>& poly, const Vec3& dir) {
  const Projector pr(dir);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) check_segment_direction(poly[(i + 1) % n] - poly[i], pr.p);
  std::vector<Eigen::Vector2d> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = pr(poly[i]);
  std::vector<int> rows(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const std::size_t i1 = (i + 1) % n;
    const Eigen::Vector2d lo = q[i].cwiseMin(q[i1]), hi = q[i].cwiseMax(q[i1]);
    int total = 0;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const std::size_t j1 = (j + 1) % n;
      const Eigen::Vector2d lo2 = q[j].cwiseMin(q[j1]), hi2 = q[j].cwiseMax(q[j1]);
      if (lo2.x() > hi.x() || lo.x() > hi2.x() || lo2.y() > hi.y() || lo.y() > hi2.y()) continue;
      const Crossing x = crossing(pr, poly[i], poly[i1], poly[j], poly[j1]);
      if (x.found) total += x.sign;
    }
    rows[i] = total;
  });
  int sum = 0;
  for (int v : rows) sum += v;
  return sum;
}

int directional_writhing(const FramedCurve& c, const Vec3& p) {
  require_closed(c, "directional_writhing");
  return directional_writhing(c.polygon(), p);
}

InvariantReport writhe_projection_average(const FramedCurve& c, std::size_t n_directions, std::uint64_t seed) {
  require_closed(c, "writhe_projection_average");
  if (n_directions < 2) throw Error(ErrorCode::ParamOutOfRange, "need at least two directions");
  const auto poly = c.polygon();
  std::vector<int> values(n_directions, 0);
  std::vector<std::size_t> rejected(n_directions, 0);
  parallel_for(n_directions, [&](std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 rng(seq);
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Vec3 p = random_direction(rng);
      try {
        values[k] = directional_writhing(poly, p);
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IrregularProjection) throw;
        ++rejected[k];
      }
    }
    throw Error(ErrorCode::IrregularProjection, "no regular direction found");
  });
  double mean = 0.0;
  for (int v : values) mean += v;
  mean /= static_cast<double>(n_directions);
  double var = 0.0;
  for (int v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_directions - 1);
  InvariantReport rep;
  rep.quantity = Quantity::Writhe;
  rep.method = Method::ProjectionAverage;
  rep.value = mean;
  rep.stderr_estimate = std::sqrt(var / static_cast<double>(n_directions));
  rep.n_samples = poly.size();
  rep.n_directions = n_directions;
  std::size_t rej = 0;
  for (auto r : rejected) rej += r;
  rep.n_rejected = rej;
  rep.seed = seed;
  return rep;
}

int linking_by_crossings(const std::vector<Vec3>& p1, const std::vector<Vec3>& p2, const Vec3& dir) {
  const Projector pr(dir);
  const std::size_t n1 = p1.size(), n2 = p2.size();
  for (std::size_t i = 0; i < n1; ++i) check_segment_direction(p1[(i + 1) % n1] - p1[i], pr.p);
  for (std::size_t j = 0; j < n2; ++j) check_segment_direction(p2[(j + 1) % n2] - p2[j], pr.p);
  std::vector<int> rows(n1, 0);
  parallel_for(n1, [&](std::size_t i) {
    int total = 0;
    for (std::size_t j = 0; j < n2; ++j) {
      const Crossing x = crossing(pr, p1[i], p1[(i + 1) % n1], p2[j], p2[(j + 1) % n2]);
      if (x.found) total += x.sign;
    }
    rows[i] = total;
  });
  int sum = 0;
  for (int v : rows) sum += v;
  if (sum % 2 != 0) throw Error(ErrorCode::IrregularProjection, "odd inter-curve crossing sum");
  return sum / 2;
}

int linking_by_crossings(const FramedCurve& c1, const FramedCurve& c2, const Vec3& p) {
  require_closed(c1, "linking_by_crossings");
  require_closed(c2, "linking_by_crossings");
  return linking_by_crossings(c1.polygon(), c2.polygon(), p);
}

double tantrix_area(const Tantrix& t) {
  if (!t.closed) throw Error(ErrorCode::NotClosed, "tantrix_area needs a closed tantrix");
  const std::size_t n = t.t.size() - 1;
  if (n < 3) throw Error(ErrorCode::TooFewSamples, "tantrix_area needs at least 3 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (t.t[i].dot(t.t[i + 1]) < -1.0 + 1e-12) {
      throw Error(ErrorCode::AntipodalSamples, "antipodal tantrix points at " + std::to_string(i));
    }
  }
  // Winding-weighted area as the solid angle swept from a base point p. Moving p across the curve
  // changes the sum by 4 pi, so the value mod 4 pi does not depend on p. Unlike the exterior-angle
  // form of Gauss-Bonnet it needs no turning-number parity for self-intersecting tantrices.
  const double g = 0.5 * (1.0 + std::sqrt(5.0));
  const Vec3 candidates[12] = {{0, 1, g}, {0, -1, g}, {0, 1, -g}, {0, -1, -g}, {1, g, 0}, {-1, g, 0},
                               {1, -g, 0}, {-1, -g, 0}, {g, 0, 1}, {-g, 0, 1}, {g, 0, -1}, {-g, 0, -1}};
  Vec3 p = Vec3::UnitZ();
  double best = -1.0;
  for (const Vec3& cand : candidates) {
    const Vec3 q = cand.normalized();
    double closest = 4.0;
    for (std::size_t i = 0; i < n; ++i) closest = std::min(closest, (q + t.t[i]).norm());
    if (closest > best) {
      best = closest;
      p = q;
    }
  }
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) area += geom::unit_solid_angle(p, t.t[i], t.t[i + 1]);
  area = std::fmod(area, 4.0 * kPi);
  if (area < 0.0) area += 4.0 * kPi;
  return area;
}

double fuller_first_residual(double area, double writhe) {
  const double x = area / kTwoPi - 1.0 - writhe;
  return std::abs(x - 2.0 * std::round(x / 2.0));
}

double fuller_difference(const Tantrix& t0, const Tantrix& t1, const Tolerances& tol) {
  if (t0.t.size() != t1.t.size()) throw Error(ErrorCode::ParamOutOfRange, "tantrices on different grids");
  double total = 0.0;
  for (std::size_t i = 0; i < t0.t.size(); ++i) {
    if (1.0 + t0.t[i].dot(t1.t[i]) < tol.nonopp) {
      throw Error(ErrorCode::NearOpposition, "opposed tangents at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i + 1 < t0.t.size(); ++i) {
    total += geom::unit_solid_angle(t0.t[i], t1.t[i], t1.t[i + 1]);
    total += geom::unit_solid_angle(t0.t[i], t1.t[i + 1], t0.t[i + 1]);
  }
  return total / kTwoPi;
}

std::vector<Vec3> pushoff(const FramedCurve& c, double eps) {
  const DirectorFrame f = build_frame(c);
  std::vector<Vec3> q(c.vertex_count());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = c[i].r + eps * f.d1[i];
  return q;
}

double ribbon_link(const FramedCurve& ribbon, double* eps_used) {
  require_closed(ribbon, "ribbon_link");
  const auto p = ribbon.polygon();
  double eps = 1e-3 * ribbon.polyline_length();
  for (int k = 0; k < 20; ++k, eps *= 0.5) {
    const auto q = pushoff(ribbon, eps);
    if (polygon_distance(p, q) >= 0.5 * eps) {
      if (eps_used) *eps_used = eps;
      return gauss_link(p, q);
    }
  }
  throw Error(ErrorCode::PushoffIntersects, "push-off does not clear the centerline");
}

CwfResult check_cwf(const FramedCurve& ribbon, const Tolerances&) {
  require_closed(ribbon, "check_cwf");
  CwfResult out;
  out.link = ribbon_link(ribbon, &out.epsilon);
  out.twist = twist(ribbon);
  out.writhe = writhe_polygonal(ribbon);
  out.residual = out.link - out.twist - out.writhe;
  out.n_samples = ribbon.vertex_count();
  return out;
}

}  // namespace ribbonlink
