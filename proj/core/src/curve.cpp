#include "ribbonlink/curve.hpp"

#include "ribbonlink/geometry.hpp"
#include "ribbonlink/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ribbonlink {

FramedCurve::FramedCurve(std::vector<Sample> samples, bool closed, std::optional<double> L,
                         std::optional<double> M)
    : samples_(std::move(samples)), closed_(closed) {
  if (samples_.size() < 2) throw Error(ErrorCode::TooFewSamples, "a curve needs at least 2 samples");
  L_ = L.value_or(samples_.back().s);
  M_ = M;
  if (closed_ && !M_) M_ = samples_.back().s;
}

std::optional<std::size_t> FramedCurve::index_of(double s, double tol) const {
  const double scale = std::max(1.0, std::abs(s_end() - s_begin()));
  auto it = std::lower_bound(samples_.begin(), samples_.end(), s - tol * scale,
                             [](const Sample& a, double v) { return a.s < v; });
  if (it != samples_.end() && std::abs(it->s - s) <= tol * scale) {
    return static_cast<std::size_t>(it - samples_.begin());
  }
  return std::nullopt;
}

std::vector<Vec3> FramedCurve::points() const {
  std::vector<Vec3> p;
  p.reserve(samples_.size());
  for (const auto& x : samples_) p.push_back(x.r);
  return p;
}

std::vector<Vec3> FramedCurve::polygon() const {
  std::vector<Vec3> p;
  p.reserve(vertex_count());
  for (std::size_t i = 0; i < vertex_count(); ++i) p.push_back(samples_[i].r);
  return p;
}

std::vector<double> FramedCurve::params() const {
  std::vector<double> s;
  s.reserve(samples_.size());
  for (const auto& x : samples_) s.push_back(x.s);
  return s;
}

double FramedCurve::polyline_length() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) total += (samples_[i + 1].r - samples_[i].r).norm();
  return total;
}

namespace {

// Derivative at x1 from samples at x0 < x1 < x2.
Vec3 centered(const Vec3& f0, const Vec3& f1, const Vec3& f2, double h0, double h1) {
  return (-h1 / (h0 * (h0 + h1))) * f0 + ((h1 - h0) / (h0 * h1)) * f1 + (h0 / (h1 * (h0 + h1))) * f2;
}

Vec3 forward(const Vec3& f0, const Vec3& f1, const Vec3& f2, double h0, double h1) {
  return (-(2.0 * h0 + h1) / (h0 * (h0 + h1))) * f0 + ((h0 + h1) / (h0 * h1)) * f1 -
         (h0 / (h1 * (h0 + h1))) * f2;
}

Vec3 backward(const Vec3& f0, const Vec3& f1, const Vec3& f2, double h0, double h1) {
  return (h1 / (h0 * (h0 + h1))) * f0 - ((h0 + h1) / (h0 * h1)) * f1 +
         ((2.0 * h1 + h0) / (h1 * (h0 + h1))) * f2;
}

Vec3 slerp(const Vec3& a, const Vec3& b, double w) {
  const double c = std::clamp(a.dot(b), -1.0, 1.0);
  const double omega = std::acos(c);
  if (omega < 1e-6 || omega > kPi - 1e-6) return ((1.0 - w) * a + w * b).normalized();
  const double so = std::sin(omega);
  return (std::sin((1.0 - w) * omega) / so) * a + (std::sin(w * omega) / so) * b;
}

struct Hermite {
  Vec3 p0, p1, m0, m1;
  double s0, h;
  Vec3 position(double s) const {
    const double t = (s - s0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * p1 +
           (t3 - t2) * h * m1;
  }
  Vec3 derivative(double s) const {
    const double t = (s - s0) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * p1 +
            (3 * t2 - 2 * t) * h * m1) /
           h;
  }
};

// Derivative at xs[j] of the polynomial through the (xs, fs) pairs.
Vec3 lagrange_derivative(const std::array<double, 5>& xs, const std::array<Vec3, 5>& fs, std::size_t j) {
  Vec3 d = Vec3::Zero();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k == j) {
      double w = 0.0;
      for (std::size_t m = 0; m < xs.size(); ++m) {
        if (m != j) w += 1.0 / (xs[j] - xs[m]);
      }
      d += w * fs[k];
    } else {
      double w = 1.0 / (xs[k] - xs[j]);
      for (std::size_t m = 0; m < xs.size(); ++m) {
        if (m != k && m != j) w *= (xs[j] - xs[m]) / (xs[k] - xs[m]);
      }
      d += w * fs[k];
    }
  }
  return d;
}

// Five-point node derivatives (fourth order); periodic for closed curves, shifted stencils at
// open ends. Falls back to the three-point rule below five samples.
std::vector<Vec3> fine_derivatives(const FramedCurve& c) {
  const auto& x = c.samples();
  const std::size_t N = x.size();
  if (N < (c.closed() ? 6u : 5u)) return node_derivatives(c);
  std::vector<Vec3> m(N);
  std::array<double, 5> xs;
  std::array<Vec3, 5> fs;
  if (c.closed()) {
    const std::size_t n = N - 1;
    const double period = x[N - 1].s - x[0].s;
    for (std::size_t i = 0; i < n; ++i) {
      for (int o = -2; o <= 2; ++o) {
        const long idx = static_cast<long>(i) + o;
        const long wrapped = ((idx % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
        const double shift = static_cast<double>((idx - wrapped) / static_cast<long>(n)) * period;
        xs[static_cast<std::size_t>(o + 2)] = x[static_cast<std::size_t>(wrapped)].s + shift;
        fs[static_cast<std::size_t>(o + 2)] = x[static_cast<std::size_t>(wrapped)].r;
      }
      m[i] = lagrange_derivative(xs, fs, 2);
    }
    m[n] = m[0];
    return m;
  }
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t lo = std::min(i >= 2 ? i - 2 : 0, N - 5);
    for (std::size_t k = 0; k < 5; ++k) {
      xs[k] = x[lo + k].s;
      fs[k] = x[lo + k].r;
    }
    m[i] = lagrange_derivative(xs, fs, i - lo);
  }
  return m;
}

Hermite segment(const FramedCurve& c, const std::vector<Vec3>& m, std::size_t i) {
  return {c[i].r, c[i + 1].r, m[i], m[i + 1], c[i].s, c[i + 1].s - c[i].s};
}

std::size_t segment_of(const FramedCurve& c, double s) {
  const auto& smp = c.samples();
  auto it = std::upper_bound(smp.begin(), smp.end(), s, [](double v, const Sample& a) { return v < a.s; });
  std::size_t k = it == smp.begin() ? 0 : static_cast<std::size_t>(it - smp.begin()) - 1;
  return std::min(k, smp.size() - 2);
}

constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                           0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

double arc_length(const Hermite& hs, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double total = 0.0;
  for (std::size_t k = 0; k < kGaussX.size(); ++k) total += kGaussW[k] * hs.derivative(mid + half * kGaussX[k]).norm();
  return total * half;
}

double box_gap(const Vec3& lo1, const Vec3& hi1, const Vec3& lo2, const Vec3& hi2) {
  double g2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::max({0.0, lo1[k] - hi2[k], lo2[k] - hi1[k]});
    g2 += d * d;
  }
  return std::sqrt(g2);
}

}  // namespace

std::vector<Vec3> node_derivatives(const FramedCurve& c) {
  const auto& x = c.samples();
  const std::size_t N = x.size();
  std::vector<Vec3> m(N);
  if (N == 2) {
    const Vec3 d = (x[1].r - x[0].r) / (x[1].s - x[0].s);
    m[0] = m[1] = d;
    return m;
  }
  if (c.closed()) {
    const std::size_t n = N - 1;
    const double period = x[N - 1].s - x[0].s;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ip = (i + n - 1) % n;
      const double sp = i == 0 ? x[ip].s - period : x[ip].s;
      const double h0 = x[i].s - sp;
      const double h1 = x[i + 1].s - x[i].s;
      m[i] = centered(x[ip].r, x[i].r, x[i + 1].r, h0, h1);
    }
    m[n] = m[0];
    return m;
  }
  m[0] = forward(x[0].r, x[1].r, x[2].r, x[1].s - x[0].s, x[2].s - x[1].s);
  for (std::size_t i = 1; i + 1 < N; ++i) {
    m[i] = centered(x[i - 1].r, x[i].r, x[i + 1].r, x[i].s - x[i - 1].s, x[i + 1].s - x[i].s);
  }
  m[N - 1] = backward(x[N - 3].r, x[N - 2].r, x[N - 1].r, x[N - 2].s - x[N - 3].s, x[N - 1].s - x[N - 2].s);
  return m;
}

Tantrix tantrix(const FramedCurve& c) {
  const auto& x = c.samples();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i + 1].s > x[i].s) || (x[i + 1].r - x[i].r).norm() == 0.0) {
      throw Error(ErrorCode::DegenerateTangent, "coincident samples at index " + std::to_string(i));
    }
  }
  const auto m = node_derivatives(c);
  Tantrix t;
  t.closed = c.closed();
  t.s = c.params();
  t.t.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double n = m[i].norm();
    if (!(n > 1e-300) || !std::isfinite(n)) {
      throw Error(ErrorCode::DegenerateTangent, "vanishing derivative at index " + std::to_string(i));
    }
    t.t.push_back(m[i] / n);
  }
  return t;
}

DirectorFrame build_frame(const FramedCurve& c, const Tolerances& tol) {
  const Tantrix t = tantrix(c);
  DirectorFrame f;
  const std::size_t N = c.size();
  f.d1.resize(N);
  f.d2.resize(N);
  f.d3 = t.t;
  for (std::size_t i = 0; i < N; ++i) {
    const Vec3& d3 = f.d3[i];
    Vec3 d1 = c[i].d1 - c[i].d1.dot(d3) * d3;
    const double n = d1.norm();
    if (n < 1e-6) {
      throw Error(ErrorCode::NonOrthogonal, "director parallel to tangent at index " + std::to_string(i));
    }
    d1 /= n;
    d1 -= d1.dot(d3) * d3;
    d1.normalize();
    if (std::abs(d1.dot(d3)) > tol.ortho) {
      throw Error(ErrorCode::NonOrthogonal, "projection failed at index " + std::to_string(i));
    }
    f.d1[i] = d1;
    f.d2[i] = d3.cross(d1);
  }
  return f;
}

FramedCurve with_projected_directors(const FramedCurve& c) {
  const DirectorFrame f = build_frame(c);
  std::vector<Sample> s = c.samples();
  for (std::size_t i = 0; i < s.size(); ++i) s[i].d1 = f.d1[i];
  if (c.closed()) s.back().d1 = s.front().d1;
  return FramedCurve(std::move(s), c.closed(), c.L(), c.M());
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ClearanceResult self_clearance(const FramedCurve& c) {
  const auto p = c.points();
  const std::size_t nseg = p.size() - 1;
  std::vector<Vec3> lo(nseg), hi(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    lo[i] = p[i].cwiseMin(p[i + 1]);
    hi[i] = p[i].cwiseMax(p[i + 1]);
  }
  std::vector<ClearanceResult> rows(nseg, {std::numeric_limits<double>::infinity(), 0, 0});
  parallel_for(nseg, [&](std::size_t i) {
    ClearanceResult best{std::numeric_limits<double>::infinity(), i, i};
    for (std::size_t j = i + 2; j < nseg; ++j) {
      if (c.closed() && i == 0 && j == nseg - 1) continue;
      if (box_gap(lo[i], hi[i], lo[j], hi[j]) >= best.distance) continue;
      const double d = geom::segment_distance(p[i], p[i + 1], p[j], p[j + 1]).distance;
      if (d < best.distance) best = {d, i, j};
    }
    rows[i] = best;
  });
  ClearanceResult out{std::numeric_limits<double>::infinity(), 0, 0};
  for (const auto& r : rows) {
    if (r.distance < out.distance) out = r;
  }
  return out;
}

ValidationReport validate(const FramedCurve& c, const Tolerances& tol) {
  ValidationReport rep;
  const auto& x = c.samples();
  const std::size_t N = x.size();
  auto add = [&](Check ch) {
    rep.ok = rep.ok && ch.passed;
    rep.checks.push_back(std::move(ch));
  };

  add({"sample_count", N >= 4, static_cast<double>(N), {}, {}});

  Check inc{"s_increasing", true, std::numeric_limits<double>::infinity(), {}, {}};
  Check reg{"regular", true, std::numeric_limits<double>::infinity(), {}, {}};
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double ds = x[i + 1].s - x[i].s;
    if (ds < inc.worst) {
      inc.worst = ds;
      inc.index = i;
    }
    const double dr = (x[i + 1].r - x[i].r).norm();
    if (dr < reg.worst) {
      reg.worst = dr;
      reg.index = i + 1;
    }
  }
  inc.passed = inc.worst > 0.0;
  reg.passed = reg.worst > 0.0;
  add(inc);
  add(reg);

  Check unit{"unit_director", true, 0.0, {}, {}};
  for (std::size_t i = 0; i < N; ++i) {
    const double dev = std::abs(x[i].d1.norm() - 1.0);
    if (dev > unit.worst) {
      unit.worst = dev;
      unit.index = i;
    }
  }
  unit.passed = unit.worst <= tol.unit;
  add(unit);

  Check orth{"orthogonality", true, 0.0, {}, {}};
  if (inc.passed && reg.passed && N >= 3) {
    const auto m = node_derivatives(c);
    for (std::size_t i = 0; i < N; ++i) {
      const double dev = std::abs(x[i].d1.normalized().dot(m[i].normalized()));
      if (dev > orth.worst) {
        orth.worst = dev;
        orth.index = i;
      }
    }
    orth.passed = orth.worst <= tol.ortho;
  } else {
    orth.passed = false;
    orth.worst = std::numeric_limits<double>::infinity();
  }
  add(orth);

  if (c.closed()) {
    Check seam{"seam", true, 0.0, {}, {}};
    const double dr = (x.front().r - x.back().r).norm();
    const double dd = (x.front().d1 - x.back().d1).norm();
    double kink = 0.0;
    if (N >= 8 && reg.passed) {
      // A kink of angle d at vertex 0 makes the turning-angle second difference there about d.
      // Smooth curvature variation and interpolation ripple appear along the whole curve, so only
      // the excess over the largest value at vertices three or more steps away counts.
      const std::size_t n = N - 1;
      auto chord = [&](std::size_t k) { return (x[(k + 1) % n].r - x[k % n].r).normalized(); };
      std::vector<double> turn(n);
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 a = chord((k + n - 1) % n), b = chord(k);
        turn[k] = std::atan2(a.cross(b).norm(), a.dot(b));
      }
      auto bend = [&](std::size_t k) { return std::abs(turn[k] - 0.5 * (turn[(k + n - 1) % n] + turn[(k + 1) % n])); };
      double far = 0.0;
      for (std::size_t k = 3; k + 3 <= n; ++k) far = std::max(far, bend(k));
      kink = std::max(0.0, bend(0) - far);
    }
    seam.worst = std::max({dr, dd, kink});
    seam.passed = dr <= tol.seam && dd <= tol.seam && kink <= tol.seam;
    add(seam);
  }

  Check clear{"non_self_intersection", true, std::numeric_limits<double>::infinity(), {}, {}};
  if (reg.passed && N >= 4) {
    const auto cl = self_clearance(c);
    clear.worst = cl.distance;
    clear.index = cl.i;
    clear.other_index = cl.j;
    clear.passed = cl.distance > tol.clearance_rel * c.polyline_length();
  } else if (!reg.passed) {
    clear.passed = false;
    clear.worst = 0.0;
  }
  add(clear);
  return rep;
}

Vec3 interpolate_position(const FramedCurve& c, const std::vector<Vec3>& derivs, double s) {
  return segment(c, derivs, segment_of(c, s)).position(s);
}

FramedCurve resample(const FramedCurve& c, std::size_t n) {
  if (n < 4) throw Error(ErrorCode::TooFewSamples, "resample needs n >= 4");
  (void)tantrix(c);  // rejects degenerate input
  const auto m = fine_derivatives(c);
  const std::size_t nseg = c.size() - 1;
  std::vector<double> cum(nseg + 1, 0.0);
  for (std::size_t i = 0; i < nseg; ++i) {
    const Hermite hs = segment(c, m, i);
    cum[i + 1] = cum[i] + arc_length(hs, c[i].s, c[i + 1].s);
  }
  const double total = cum.back();

  auto arclength_at = [&](double s) {
    const std::size_t k = segment_of(c, s);
    return cum[k] + arc_length(segment(c, m, k), c[k].s, s);
  };

  const std::size_t count = c.closed() ? n : n;
  std::vector<Sample> out;
  out.reserve(count + 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double target = c.closed() ? total * static_cast<double>(k) / static_cast<double>(n)
                                     : total * static_cast<double>(k) / static_cast<double>(n - 1);
    std::size_t seg = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    seg = seg == 0 ? 0 : std::min(seg - 1, nseg - 1);
    const Hermite hs = segment(c, m, seg);
    const double local = target - cum[seg];
    double a = c[seg].s, b = c[seg + 1].s;
    double u = a + (b - a) * std::clamp(local / std::max(cum[seg + 1] - cum[seg], 1e-300), 0.0, 1.0);
    for (int it = 0; it < 60; ++it) {
      const double f = arc_length(hs, c[seg].s, u) - local;
      if (std::abs(f) < 1e-15 * std::max(1.0, total)) break;
      if (f > 0) b = u; else a = u;
      const double speed = hs.derivative(u).norm();
      double next = u - f / speed;
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      u = next;
    }
    const double w = (u - c[seg].s) / (c[seg + 1].s - c[seg].s);
    out.push_back({target, hs.position(u), slerp(c[seg].d1, c[seg + 1].d1, w)});
  }
  if (c.closed()) {
    Sample last = out.front();
    last.s = total;
    out.push_back(last);
  } else {
    out.back().r = c.samples().back().r;
    out.back().d1 = c.samples().back().d1;
  }
  std::optional<double> L = c.L() >= c.s_end() ? total : arclength_at(c.L());
  std::optional<double> M;
  if (c.M()) M = total;
  return with_projected_directors(FramedCurve(std::move(out), c.closed(), L, M));
}

}  // namespace ribbonlink
