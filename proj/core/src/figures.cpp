#include "ribbonlink/figures.hpp"

#include "ribbonlink/euler.hpp"
#include "ribbonlink/geometry.hpp"
#include "ribbonlink/rod_builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace ribbonlink {

namespace {

std::size_t sample_count(double length, double per_unit) {
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(length * per_unit - 1e-9))) + 1;
}

std::vector<double> uniform_lambda(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::ParamOutOfRange, "a homotopy needs at least two slices");
  std::vector<double> l(n);
  for (std::size_t k = 0; k < n; ++k) l[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  l.back() = 1.0;
  return l;
}

double deg(double d) { return d * kPi / 180.0; }

// fig1 layout along the arclength sigma.
struct Fig1Layout {
  double lead = 1.0, ramp = 0.5, plateau = kPi, middle = 4.5;
  double a0() const { return lead; }
  double pa() const { return a0() + ramp; }
  double qa() const { return pa() + plateau; }
  double b0() const { return qa() + ramp + middle; }
  double pb() const { return b0() + ramp; }
  double qb() const { return pb() + plateau; }
  double length() const { return qb() + ramp + lead; }
};

struct Fig1Shape {
  double theta_a = 0.0, theta_b = 0.0;
  double twist = 0.0;       // total change of phi + psi (radians) before relabelling
  bool relabel = false;     // loop A carried with psi = 0 after passing theta = pi
  double chi_scale = 1.0;
};

double bump(double s, double start, double top, double ramp) {
  return smooth_step((s - start) / ramp) - smooth_step((s - top) / ramp);
}

// Smooth in s so the position quadrature keeps the ends in the closure plane to rounding.
double loop_psi(double s, double p, double plateau) { return -kTwoPi * smooth_step((s - p) / plateau); }

FramedCurve fig1_build(const Fig1Shape& sh, double per_unit) {
  const Fig1Layout g;
  const double S = g.length();
  auto angles = [g, sh, S](double s) {
    const double psi_a = loop_psi(s, g.pa(), g.plateau);
    const double psi_b = loop_psi(s, g.pb(), g.plateau);
    const double theta = sh.theta_a * bump(s, g.a0(), g.qa(), g.ramp) + sh.theta_b * bump(s, g.b0(), g.qb(), g.ramp);
    const double psi = sh.relabel ? psi_b : psi_a + psi_b;
    const double chi = sh.chi_scale * (sh.twist * s / S - (sh.relabel ? 2.0 * psi_a : 0.0));
    return Vec3(chi - psi, psi, theta);
  };
  return build_rod(euler_frame_fn(angles, euler_basis(Vec3::UnitZ())), S, sample_count(S, per_unit));
}

Fig1Shape fig1_stage(char stage, const Fig1Options& opt) {
  Fig1Shape sh;
  switch (stage) {
    case 'a': break;
    case 'b': sh.twist = -2.0 * kTwoPi; break;
    case 'c':
      sh.twist = -2.0 * kTwoPi;
      sh.theta_a = sh.theta_b = deg(opt.theta_deg);
      break;
    default: throw Error(ErrorCode::ParamOutOfRange, std::string("unknown fig1 stage ") + stage);
  }
  return sh;
}

}  // namespace

ClosureSpec fig1_closure() {
  ClosureSpec spec;
  spec.normal = Vec3::UnitY();
  spec.rho = 0.3;
  spec.w = 0.75;
  return spec;
}

FramedCurve fig1_rod(char stage, const Fig1Options& opt) {
  if (!(opt.theta_deg > 0.0 && opt.theta_deg < 90.0)) throw Error(ErrorCode::ParamOutOfRange, "fig1 theta must be in (0, 90) degrees");
  return fig1_build(fig1_stage(stage, opt), opt.samples_per_unit);
}

namespace {

ClosureSpec coarse_closure(ClosureSpec spec, double spacing, double length_hint) {
  spec.samples = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(length_hint / spacing)));
  return spec;
}

Homotopy close_fig1(const std::vector<double>& lambda, const std::vector<FramedCurve>& rods, bool require_valid) {
  ClosureSpec spec = fig1_closure();
  spec.require_valid = require_valid;
  // The detour is mostly straight, so it is sampled more coarsely than the rod.
  double len = 0.0;
  for (const auto& r : rods) {
    ClosureSpec probe = spec;
    len = std::max(len, fillet_polyline_length(closure_corners(r, probe), spec.rho));
  }
  spec = coarse_closure(spec, 0.04, 1.5 * len);
  return close_family(lambda, rods, spec, "fig1a");
}

}  // namespace

Homotopy fig1_homotopy(const std::string& path, const Fig1Options& opt) {
  const auto lambda = uniform_lambda(opt.slices);
  const Fig1Shape b = fig1_stage('b', opt), c = fig1_stage('c', opt);
  std::vector<FramedCurve> rods(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const double l = lambda[k];
    Fig1Shape sh;
    if (path == "ab") {
      sh.twist = l * b.twist;
    } else if (path == "bc") {
      sh = b;
      sh.theta_a = sh.theta_b = l * c.theta_a;
    } else if (path == "ac") {
      sh.twist = std::min(1.0, 2.0 * l) * b.twist;
      sh.theta_a = sh.theta_b = std::max(0.0, 2.0 * l - 1.0) * c.theta_a;
    } else {
      throw Error(ErrorCode::ParamOutOfRange, "fig1 path must be ab, bc or ac");
    }
    rods[k] = fig1_build(sh, opt.samples_per_unit);
  }
  return close_fig1(lambda, rods, true);
}

Homotopy fig1_looping_path(const Fig1Options& opt) {
  const Fig1Shape c = fig1_stage('c', opt);
  std::vector<Fig1Shape> shapes;
  const int n1 = 12, n2 = 8, n3 = 8, n4 = 4;
  for (int k = 0; k <= n1; ++k) {
    Fig1Shape sh = c;
    sh.theta_a = c.theta_a + (kPi - c.theta_a) * k / n1;
    shapes.push_back(sh);
  }
  for (int k = 1; k <= n2; ++k) {
    Fig1Shape sh = c;
    sh.relabel = true;
    sh.theta_a = kPi * (1.0 - static_cast<double>(k) / n2);
    shapes.push_back(sh);
  }
  for (int k = 1; k <= n3; ++k) {
    Fig1Shape sh = c;
    sh.relabel = true;
    sh.theta_a = 0.0;
    sh.theta_b = c.theta_b * (1.0 - static_cast<double>(k) / n3);
    shapes.push_back(sh);
  }
  for (int k = 1; k <= n4; ++k) {
    Fig1Shape sh = c;
    sh.relabel = true;
    sh.theta_a = sh.theta_b = 0.0;
    sh.chi_scale = 1.0 - static_cast<double>(k) / n4;
    shapes.push_back(sh);
  }
  const auto lambda = uniform_lambda(shapes.size());
  std::vector<FramedCurve> rods(shapes.size());
  for (std::size_t k = 0; k < shapes.size(); ++k) rods[k] = fig1_build(shapes[k], opt.samples_per_unit);
  return close_fig1(lambda, rods, false);
}

namespace {

// Rod with straight leads and one loop whose tantrix runs once round the circle of angular
// radius beta about c = (0, tilt sin beta, cos beta). The leads bend slightly towards -tilt e_y
// so that both ends lie in the plane y = 0.
struct LoopRod {
  double l1 = 1.5, l2 = 1.5;
  double a = kTwoPi, b = 0.0;  // loop speed a + b u for u in [0, 1]
  double beta = 0.0;
  int tilt = 1, sense = 1;
  bool bend_l1 = true;  // a short first lead stays straight so the seam at s = 0 stays smooth
  double loop_length() const { return a + 0.5 * b; }
  double length() const { return l1 + loop_length() + l2; }
};

// The loop shrunk by f in (0, 1], its lost length moved into the leads (share l1_share to l1).
LoopRod scaled_loop(LoopRod p, double f, double l1_share) {
  const double lost = (1.0 - f) * p.loop_length();
  p.a *= f;
  p.b *= f;
  p.l1 += l1_share * lost;
  p.l2 += (1.0 - l1_share) * lost;
  return p;
}

Vec3 cone_tangent(double beta, int tilt, double angle) {
  const Vec3 c(0.0, tilt * std::sin(beta), std::cos(beta));
  return Eigen::AngleAxisd(angle, c) * Vec3::UnitZ();
}

// Loop parameter u reached after arclength sigma at speed a + b u.
double loop_u(double a, double b, double sigma) {
  if (b < 1e-12) return sigma / a;
  return (std::sqrt(a * a + 2.0 * b * sigma) - a) / b;
}

Vec3 loop_rod_tangent(const LoopRod& p, double eps, double s) {
  const double ll = p.loop_length();
  if (s < p.l1 && !p.bend_l1) return Vec3::UnitZ();
  if (ll <= 0.0 || s < p.l1 || s > p.l1 + ll) {
    const double g = s < p.l1 ? s / p.l1 : (s - p.l1 - ll) / p.l2;
    const double e = eps * (smooth_step(3.0 * g) - smooth_step(3.0 * g - 2.0));
    return Vec3(0.0, -p.tilt * std::sin(e), std::cos(e));
  }
  const double u = std::min(1.0, loop_u(p.a, p.b, s - p.l1));
  return cone_tangent(p.beta, p.tilt, p.sense * kTwoPi * u);
}

// Rod end with the sample grid and quadrature of build_rod_transport.
Vec3 rod_end(const std::function<Vec3(double)>& t, double length, std::size_t n) {
  Vec3 r = Vec3::Zero();
  const double h = length / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double a = h * static_cast<double>(i - 1);
    r += integrate_tangent(t, a, a + h, 8);
  }
  return r;
}

FramedCurve build_loop_rod(const LoopRod& p, double per_unit) {
  const double S = p.length();
  const std::size_t n = sample_count(S, per_unit);
  auto end_y = [&](double eps) {
    return p.tilt * rod_end([&](double s) { return loop_rod_tangent(p, eps, s); }, S, n).y();
  };
  double lo = 0.0, hi = 1.2;
  if (end_y(0.0) > 0.0) {
    if (end_y(hi) > 0.0) throw Error(ErrorCode::InfeasibleGeometry, "loop drift too large for the lead bend");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (end_y(mid) > 0.0 ? lo : hi) = mid;
    }
  } else {
    hi = 0.0;
  }
  const double eps = 0.5 * (lo + hi);
  return build_rod_transport([p, eps](double s) { return loop_rod_tangent(p, eps, s); }, S, n, Vec3::UnitX());
}

// Planar-at-beta = pi/2 curl leaving the rod end: `turns` turns about the cone axis at speed
// turns (a + b u), so the radius grows from a / 2 pi to (a + b) / 2 pi.
struct EndLoop {
  double beta = 0.0;
  int turns = 1, tilt = 1, sense = 1;
  double a = 1.0, b = 3.0;
  double length() const { return turns * (a + 0.5 * b); }
};

std::vector<Vec3> trace(const std::function<Vec3(double)>& t, double length, const Vec3& start, std::size_t m) {
  std::vector<Vec3> pts{start};
  const double h = length / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = h * static_cast<double>(i);
    pts.push_back(pts.back() + integrate_tangent(t, a, a + h, 4));
  }
  return pts;
}

std::vector<Vec3> end_loop_points(const EndLoop& k, const Vec3& start) {
  if (k.turns == 0) return {start};
  auto t = [k](double s) {
    const double u = std::min(1.0, loop_u(k.turns * k.a, k.turns * k.b, s));
    return cone_tangent(k.beta, k.tilt, k.sense * kTwoPi * k.turns * u);
  };
  return trace(t, k.length(), start, static_cast<std::size_t>(400 * k.turns));
}

void append(std::vector<Vec3>& to, const std::vector<Vec3>& from) {
  to.insert(to.end(), from.begin() + (to.empty() ? 0 : 1), from.end());
}

double path_length(const std::vector<Vec3>& p) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) len += (p[i + 1] - p[i]).norm();
  return len;
}

std::vector<Vec3> resample(const std::vector<Vec3>& p, std::size_t K) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i + 1 < p.size(); ++i) cum.push_back(cum.back() + (p[i + 1] - p[i]).norm());
  std::vector<Vec3> out{p.front()};
  std::size_t j = 0;
  for (std::size_t k = 1; k < K; ++k) {
    const double target = cum.back() * static_cast<double>(k) / static_cast<double>(K);
    while (cum[j + 1] < target) ++j;
    const double f = (target - cum[j]) / std::max(cum[j + 1] - cum[j], 1e-300);
    out.push_back(p[j] + f * (p[j + 1] - p[j]));
  }
  out.push_back(p.back());
  return out;
}

// Closes each rod with its dense closure polyline on a grid shared by the family.
Homotopy close_dense(const std::vector<double>& lambda, const std::vector<FramedCurve>& rods,
                     const std::vector<std::vector<Vec3>>& closures, double spacing, std::string tag) {
  double longest = 0.0;
  for (const auto& c : closures) longest = std::max(longest, path_length(c));
  const auto K = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(longest / spacing)));
  const double M = rods.front().s_end() + longest;
  std::vector<FramedCurve> slices;
  for (std::size_t k = 0; k < rods.size(); ++k) slices.push_back(join_closure(rods[k], resample(closures[k], K), M).curve);
  return Homotopy(lambda, std::move(slices), std::move(tag));
}

// Detour in the plane y = 0: up from the end of `lead`, across to x = far, down, and back
// under the rod into its start at the origin.
std::vector<Vec3> box_points(const Vec3& from, double top, double far, double bottom) {
  const std::vector<Vec3> corners{from, Vec3(from.x(), from.y(), top), Vec3(far, from.y(), top), Vec3(far, 0.0, bottom),
                                  Vec3(0.0, 0.0, bottom), Vec3::Zero()};
  const double len = fillet_polyline_length(corners, 0.3);
  return fillet_polyline(corners, 0.3, static_cast<std::size_t>(std::ceil(len / 0.005)));
}

FramedCurve rotated(const FramedCurve& c, const Eigen::Matrix3d& R) {
  std::vector<Sample> s = c.samples();
  for (auto& x : s) {
    x.r = R * x.r;
    x.d1 = R * x.d1;
  }
  return FramedCurve(std::move(s), c.closed(), c.L(), c.M());
}

constexpr double kFig3Beta = 1.5;

// Forms the loop from the straight rod: the tantrix circle opens to beta on a loop shortened to
// 30 percent, then the loop lengthens. Shrinking to zero length instead is not C1 in lambda.
LoopRod form_loop(const LoopRod& p, double beta, double l, double l1_share) {
  constexpr double f0 = 0.3;
  const double open = std::min(1.0, 2.0 * l), grow = std::max(0.0, 2.0 * l - 1.0);
  LoopRod q = scaled_loop(p, f0 + (1.0 - f0) * grow, l1_share);
  q.beta = open * beta;
  return q;
}

}  // namespace

Homotopy fig3_homotopy(char variant, const Fig3Options& opt) {
  if (variant != 'a' && variant != 'b' && variant != 'c' && variant != 'd') {
    throw Error(ErrorCode::ParamOutOfRange, std::string("unknown fig3 variant ") + variant);
  }
  if (variant == 'c' && opt.n < 1) throw Error(ErrorCode::ParamOutOfRange, "fig3 c needs n >= 1");
  const auto lambda = variant == 'a' ? uniform_lambda(2) : uniform_lambda(opt.slices);
  LoopRod p;
  p.tilt = 1;
  p.sense = -1;
  const double far = -3.5 * p.tilt * p.sense;
  std::vector<FramedCurve> rods;
  std::vector<std::vector<Vec3>> closures;
  for (double l : lambda) {
    // b is formed over the whole range; c and d form b over the first half, then grow the end loop.
    const bool two_stage = variant == 'c' || variant == 'd';
    const double form = variant == 'a' ? 0.0 : two_stage ? std::min(1.0, 2.0 * l) : l;
    const double grow = two_stage ? std::max(0.0, 2.0 * l - 1.0) : 0.0;
    const LoopRod q = form_loop(p, kFig3Beta, form, 0.5);
    FramedCurve rod = build_loop_rod(q, opt.samples_per_unit);
    EndLoop k;
    k.tilt = p.tilt;
    k.turns = variant == 'c' ? opt.n : 1;
    k.sense = variant == 'c' ? p.sense : -p.sense;
    k.beta = 0.5 * kPi * smooth_step(grow);
    std::vector<Vec3> pts;
    append(pts, end_loop_points(k, rod.samples().back().r));
    append(pts, box_points(pts.back(), pts.back().z() + 0.6, far, -0.8));
    if (variant == 'c') {
      // Rigid turns about e_y keep the closure planar while the end tangents sweep round.
      const Eigen::Matrix3d R = Eigen::AngleAxisd(kTwoPi * opt.n * smooth_step(grow), Vec3::UnitY()).toRotationMatrix();
      rod = rotated(rod, R);
      for (auto& x : pts) x = R * x;
    }
    rods.push_back(std::move(rod));
    closures.push_back(std::move(pts));
  }
  return close_dense(lambda, rods, closures, 0.03, "fig3a");
}

Homotopy fig4_homotopy(char variant, const Fig4Options& opt) {
  if (variant != 'a' && variant != 'b') throw Error(ErrorCode::ParamOutOfRange, std::string("unknown fig4 variant ") + variant);
  const auto lambda = uniform_lambda(opt.slices);
  LoopRod p;
  p.l1 = 0.3;
  p.bend_l1 = false;
  p.a = 1.0;
  p.b = 4.0;
  const double beta = 1.52;
  std::vector<FramedCurve> rods;
  std::vector<std::vector<Vec3>> closures;
  for (double l : lambda) {
    // a grows the loop from nothing; b tilts a planar curl out of the plane.
    LoopRod q = variant == 'a' ? form_loop(p, beta, l, 0.0) : p;
    if (variant == 'b') q.beta = 0.5 * kPi + l * (beta - 0.5 * kPi);
    FramedCurve rod = build_loop_rod(q, opt.samples_per_unit);
    const Vec3 end = rod.samples().back().r;
    std::vector<Vec3> pts;
    if (variant == 'a') {
      pts = box_points(end, end.z() + 0.6, -3.5 * p.tilt * p.sense, -0.8);
    } else {
      // Short closure: over the top of the far lead, down between the leads and up into the start.
      const double xg = 0.5 * end.x();
      const double rho = 0.22 * std::abs(end.x());
      const std::vector<Vec3> corners{end, Vec3(end.x(), 0.0, end.z() + 0.5), Vec3(xg, 0.0, end.z() + 0.5),
                                      Vec3(xg, 0.0, -0.3), Vec3(0.0, 0.0, -0.3), Vec3::Zero()};
      pts = fillet_polyline(corners, rho, static_cast<std::size_t>(std::ceil(fillet_polyline_length(corners, rho) / 0.005)));
    }
    if (variant == 'b') {
      const Eigen::Matrix3d R = Eigen::AngleAxisd(kPi, Vec3::UnitY()).toRotationMatrix();
      rod = rotated(rod, R);
      for (auto& x : pts) x = R * x;
    }
    rods.push_back(std::move(rod));
    closures.push_back(std::move(pts));
  }
  return close_dense(lambda, rods, closures, 0.02, variant == 'a' ? "fig4a" : "fig4b");
}

namespace {

struct RandomProfile {
  std::array<double, 4> theta_c{}, theta_p{}, psi_c{}, psi_p{}, twist_c{};
  double psi_rate = 0.0, twist_rate = 0.0;
};

RandomProfile draw_profile(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  auto u = [&] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  RandomProfile r;
  for (int k = 0; k < 4; ++k) {
    r.theta_c[k] = u() / (k + 1);
    r.theta_p[k] = kPi * u();
    r.psi_c[k] = 2.0 * u() / (k + 1);
    r.psi_p[k] = kPi * u();
    r.twist_c[k] = 3.0 * u() / (k + 1);
  }
  r.psi_rate = 2.0 * u();
  r.twist_rate = 3.0 * kTwoPi * u();
  return r;
}

// Euler angles (phi, psi, theta) at twist scale lt and bend scale lb. theta vanishes with all derivatives at the ends, so
// both end tangents are e3; phi + psi vanishes at lt = 0, so the reference is straight and untwisted.
Vec3 random_angles(const RandomProfile& r, const RandomA2Options& opt, double lt, double lb, double s) {
  const double L = opt.length, x = s / L, ramp = 0.25;
  const double env = smooth_step(x / ramp) - smooth_step((x - 1.0 + ramp) / ramp);
  double g = 0.0, norm = 0.0, psi = r.psi_rate * s, twist = r.twist_rate * x;
  for (int k = 0; k < 4; ++k) {
    g += r.theta_c[k] * std::sin((k + 1) * kPi * x + r.theta_p[k]);
    norm += std::abs(r.theta_c[k]);
    psi += r.psi_c[k] * std::sin((k + 1) * kPi * x + r.psi_p[k]);
    twist += r.twist_c[k] * std::sin((k + 1) * kPi * x);
  }
  const double theta = lb * opt.max_theta * env * (0.6 + 0.4 * g / std::max(norm, 1e-12));
  return Vec3(lt * twist - psi, psi, theta);
}

FramedCurve random_rod(const RandomProfile& r, const RandomA2Options& opt, double lt, double lb) {
  return build_rod(euler_frame_fn([r, opt, lt, lb](double s) { return random_angles(r, opt, lt, lb, s); },
                                  euler_basis(Vec3::UnitZ())),
                   opt.length, sample_count(opt.length, opt.samples_per_unit));
}

double chord_angle(const FramedCurve& rod) {
  const Vec3 c = rod.samples().back().r - rod.samples().front().r;
  return std::atan2(c.y(), c.x());
}

}  // namespace

Homotopy random_a2_homotopy(std::uint64_t seed, const RandomA2Options& opt) {
  if (!(opt.length > 0.0) || !(opt.max_theta > 0.0 && opt.max_theta < kPi - 0.2)) {
    throw Error(ErrorCode::ParamOutOfRange, "random A2 needs length > 0 and max_theta in (0, pi - 0.2)");
  }
  const auto lambda = uniform_lambda(opt.slices);
  auto scales = [](RandomSchedule sched, double l) {
    switch (sched) {
      case RandomSchedule::TwistFirst: return std::pair{std::min(1.0, 2.0 * l), std::max(0.0, 2.0 * l - 1.0)};
      case RandomSchedule::BendFirst: return std::pair{std::max(0.0, 2.0 * l - 1.0), std::min(1.0, 2.0 * l)};
      default: return std::pair{l, l};
    }
  };
  auto family = [&](const RandomProfile& prof, RandomSchedule sched) {
    // Each rod turns about e3 so that its chord lies in the closure plane y = 0. The chord does
    // not depend on the twist; straight rods take the small-bend limit of the turn.
    std::vector<FramedCurve> rods;
    double prev = chord_angle(random_rod(prof, opt, 0.0, 1e-4));
    for (double l : lambda) {
      const auto [lt, lb] = scales(sched, l);
      FramedCurve rod = random_rod(prof, opt, lt, lb);
      double a = lb > 0.0 ? chord_angle(rod) : prev;
      a += kTwoPi * std::round((prev - a) / kTwoPi);
      prev = a;
      rods.push_back(rotated(rod, Eigen::AngleAxisd(-a, Vec3::UnitZ()).toRotationMatrix()));
    }
    ClosureSpec spec = fig1_closure();
    if (opt.closure_rho) spec.rho = *opt.closure_rho;
    if (opt.closure_w) spec.w = *opt.closure_w;
    double len = 0.0;
    for (const auto& r : rods) len = std::max(len, fillet_polyline_length(closure_corners(r, spec), spec.rho));
    return close_family(lambda, rods, coarse_closure(spec, 0.04, 1.5 * len), "random_a2");
  };
  // Draws are accepted on the joint schedule so every schedule reaches the same rod.
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const RandomProfile prof = draw_profile(seed * 0x9e3779b97f4a7c15ull + attempt);
    try {
      Homotopy joint = family(prof, RandomSchedule::Joint);
      if (!validate_homotopy(joint).ok) continue;
      if (opt.schedule == RandomSchedule::Joint) return joint;
    } catch (const Error&) {
      continue;  // self-intersecting draw
    }
    return family(prof, opt.schedule);
  }
  throw Error(ErrorCode::InfeasibleGeometry, "no valid random A2 rod found for this seed");
}

}  // namespace ribbonlink
