#include "ribbonlink/euler.hpp"

#include "ribbonlink/geometry.hpp"
#include "ribbonlink/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace ribbonlink {

EulerBasis euler_basis(const Vec3& e3in) {
  EulerBasis b;
  b.e3 = e3in.normalized();
  const Vec3 seed = std::abs(b.e3.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  b.e1 = (seed - seed.dot(b.e3) * b.e3).normalized();
  b.e2 = b.e3.cross(b.e1);
  return b;
}

void euler_frame(double phi, double psi, double theta, const EulerBasis& b, Vec3& d1, Vec3& d2, Vec3& d3) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double cp = std::cos(psi), sp = std::sin(psi);
  const double ct = std::cos(theta), st = std::sin(theta);
  d1 = (-sp * sf + cp * cf * ct) * b.e1 + (cp * sf + sp * cf * ct) * b.e2 - cf * st * b.e3;
  d2 = (-cp * sf * ct - sp * cf) * b.e1 + (-sp * sf * ct + cp * cf) * b.e2 + sf * st * b.e3;
  d3 = cp * st * b.e1 + sp * st * b.e2 + ct * b.e3;
}

namespace {

double nearest_branch(double raw, double prev) { return prev + geom::wrap_angle(raw - prev); }

// phi + psi, valid away from theta = pi.
double chi_raw(const Vec3& d1, const Vec3& d2, const EulerBasis& b) {
  return std::atan2(d1.dot(b.e2) - d2.dot(b.e1), d1.dot(b.e1) + d2.dot(b.e2));
}

double theta_of(const Vec3& d3, const EulerBasis& b) {
  const Vec3 perp = d3 - d3.dot(b.e3) * b.e3;
  return std::atan2(perp.norm(), d3.dot(b.e3));
}

constexpr double kPoleTheta = 1e-10;

}  // namespace

EulerAngles extract_euler(const DirectorFrame& fr, const std::vector<double>& s, const Vec3& e3,
                          const Tolerances& tol, bool allow_singular) {
  const std::size_t n = fr.d1.size();
  EulerAngles a;
  a.basis = euler_basis(e3);
  a.s = s;
  a.phi.resize(n);
  a.psi.resize(n);
  a.theta.resize(n);
  a.singular.assign(n, false);
  const EulerBasis& b = a.basis;
  std::vector<double> chi(n);
  std::vector<bool> has_psi(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    a.theta[i] = theta_of(fr.d3[i], b);
    if (a.theta[i] > kPi - tol.sing) {
      a.singular[i] = true;
      if (!allow_singular) {
        throw Error(ErrorCode::PolarSingularity, "theta within " + std::to_string(tol.sing) +
                                                     " of pi at sample " + std::to_string(i));
      }
    }
    chi[i] = chi_raw(fr.d1[i], fr.d2[i], b);
    if (a.theta[i] > kPoleTheta) {
      a.psi[i] = std::atan2(fr.d3[i].dot(b.e2), fr.d3[i].dot(b.e1));
      has_psi[i] = true;
    }
  }
  // psi at the pole follows the nearest defined value; an everywhere-straight rod gets psi = 0.
  const auto first = std::find(has_psi.begin(), has_psi.end(), true);
  double carry = first == has_psi.end() ? 0.0 : a.psi[static_cast<std::size_t>(first - has_psi.begin())];
  for (std::size_t i = 0; i < n; ++i) {
    if (has_psi[i] && !a.singular[i]) {
      carry = i == 0 ? a.psi[i] : nearest_branch(a.psi[i], carry);
    }
    a.psi[i] = carry;
  }
  for (std::size_t i = 1; i < n; ++i) chi[i] = nearest_branch(chi[i], chi[i - 1]);
  for (std::size_t i = 0; i < n; ++i) a.phi[i] = chi[i] - a.psi[i];
  return a;
}

EulerAngles extract_euler(const FramedCurve& rod, const Vec3& e3, const Tolerances& tol) {
  return extract_euler(build_frame(rod, tol), rod.params(), e3, tol);
}

double reconstruction_error(const EulerAngles& a, const DirectorFrame& fr) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.phi.size(); ++i) {
    if (a.singular[i]) continue;
    Vec3 d1, d2, d3;
    euler_frame(a.phi[i], a.psi[i], a.theta[i], a.basis, d1, d2, d3);
    worst = std::max({worst, (d1 - fr.d1[i]).norm(), (d2 - fr.d2[i]).norm(), (d3 - fr.d3[i]).norm()});
  }
  return worst;
}

double end_rotation_euler(const FramedCurve& rod, const Vec3& e3, const Tolerances& tol) {
  const FramedCurve open = rod.closed() ? FramedCurve(std::vector<Sample>(rod.samples().begin(),
                                                                          rod.samples().begin() +
                                                                              static_cast<std::ptrdiff_t>(*rod.index_of(rod.L())) + 1),
                                                      false, rod.L())
                                        : rod;
  const EulerAngles a = extract_euler(open, e3, tol);
  const std::size_t last = a.phi.size() - 1;
  return a.chi(last) - a.chi(0);
}

namespace {

// Signed area of the spherical triangle (pole, t_i, t_i+1) with the tangents joined by a great
// circle: the exact integral of (1 - cos theta) dpsi along that arc.
double pole_triangle_area(const EulerAngles& a, std::size_t i) {
  const double k = std::tan(0.5 * a.theta[i]) * std::tan(0.5 * a.theta[i + 1]);
  const double dpsi = a.psi[i + 1] - a.psi[i];
  return 2.0 * std::atan2(k * std::sin(dpsi), 1.0 + k * std::cos(dpsi));
}

}  // namespace

double euler_writhe(const EulerAngles& a) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < a.psi.size(); ++i) total += pole_triangle_area(a, i);
  return total / kTwoPi;
}

double euler_twist(const EulerAngles& a) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < a.psi.size(); ++i) {
    total += (a.chi(i + 1) - a.chi(i)) - pole_triangle_area(a, i);
  }
  return total / kTwoPi;
}

double end_rotation_homotopy(const Homotopy& h) {
  if (!end_tangent_constancy(h)) throw Error(ErrorCode::NotA2Class, "end tangents are not constant");
  if (!straight_reference(h)) throw Error(ErrorCode::NotA2Class, "reference rod is not straight with constant d1");
  const Vec3 v = tantrix(h.rod(0)).t.front();
  const std::size_t nk = h.size();
  const std::size_t ends[2] = {0, h.split_index()};
  std::vector<std::array<Vec3, 2>> d1(nk);
  parallel_for(nk, [&](std::size_t k) {
    const DirectorFrame f = build_frame(h.slice(k));
    d1[k] = {f.d1[ends[0]], f.d1[ends[1]]};
  });
  auto angle = [&](std::size_t j, std::size_t k0, std::size_t k1) {
    return geom::signed_angle(d1[k0][j], d1[k1][j], v);
  };
  double fine = 0.0, coarse = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double sign = j == 1 ? 1.0 : -1.0;
    for (std::size_t k = 0; k + 1 < nk; ++k) {
      const double a = angle(static_cast<std::size_t>(j), k, k + 1);
      if (std::abs(a) > 0.5 * kPi) {
        throw Error(ErrorCode::GridTooCoarse, "end director turns by more than pi/2 between slices " +
                                                  std::to_string(k) + " and " + std::to_string(k + 1));
      }
      fine += sign * a;
    }
    for (std::size_t k = 0; k + 1 < nk; k += 2) {
      const std::size_t k1 = std::min(k + 2, nk - 1);
      coarse += sign * angle(static_cast<std::size_t>(j), k, k1);
    }
  }
  if (std::abs(fine - coarse) > 1e-3) {
    throw Error(ErrorCode::GridTooCoarse, "end rotation changes under lambda coarsening");
  }
  return fine;
}

Circulation euler_circulation(const Homotopy& h, const Vec3& e3, const Tolerances& tol) {
  const EulerBasis b = euler_basis(e3);
  const std::size_t nk = h.size();
  const std::size_t split = h.split_index();
  std::vector<std::vector<double>> chi(nk);
  parallel_for(nk, [&](std::size_t k) {
    const bool edge = k == 0 || k + 1 == nk;
    const DirectorFrame f = build_frame(h.slice(k), tol);
    for (std::size_t i = 0; i <= split; ++i) {
      if (!edge && i != 0 && i != split) continue;
      if (theta_of(f.d3[i], b) > kPi - tol.sing) {
        throw Error(ErrorCode::PolarSingularity, "theta near pi on the boundary at slice " + std::to_string(k));
      }
    }
    chi[k].assign(split + 1, 0.0);
    for (std::size_t i = 0; i <= split; ++i) {
      if (edge || i == 0 || i == split) chi[k][i] = chi_raw(f.d1[i], f.d2[i], b);
    }
  });
  Circulation c;
  auto step = [&](double from, double to) {
    const double d = geom::wrap_angle(to - from);
    c.max_step = std::max(c.max_step, std::abs(d));
    c.value += d;
  };
  for (std::size_t i = 0; i < split; ++i) step(chi[0][i], chi[0][i + 1]);
  for (std::size_t k = 0; k + 1 < nk; ++k) step(chi[k][split], chi[k + 1][split]);
  for (std::size_t i = split; i > 0; --i) step(chi[nk - 1][i], chi[nk - 1][i - 1]);
  for (std::size_t k = nk - 1; k > 0; --k) step(chi[k][0], chi[k - 1][0]);
  if (c.max_step > 0.5 * kPi) throw Error(ErrorCode::GridTooCoarse, "boundary step of phi + psi exceeds pi/2");
  return c;
}

double fuller_open_writhe(const Tantrix& t, const Vec3& vin, const Tolerances& tol) {
  const Vec3 v = vin.normalized();
  for (std::size_t i = 0; i < t.t.size(); ++i) {
    if (1.0 + v.dot(t.t[i]) < tol.nonopp) {
      throw Error(ErrorCode::NearOpposition, "v opposes the tangent at index " + std::to_string(i));
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t.t.size(); ++i) total += geom::unit_solid_angle(v, t.t[i], t.t[i + 1]);
  return total / kTwoPi;
}

RotationDerivative rotation_derivative(const Vec3& v, const Vec3& omega, const Vec3& t, const Vec3& tdot, double h) {
  const Vec3 w = omega.normalized();
  auto g = [&](double a) {
    const Vec3 va = geom::rotate(v, w, a);
    return va.cross(t).dot(tdot) / (1.0 + va.dot(t));
  };
  const Vec3 wv = w.cross(v);
  const double den = 1.0 + v.dot(t);
  RotationDerivative out;
  out.analytic = (den * wv.cross(t) - v.cross(t) * wv.dot(t)).dot(tdot) / (den * den);
  out.finite_difference = (g(h) - g(-h)) / (2.0 * h);
  return out;
}

Icosphere icosphere(int level) {
  if (level < 0 || level > 7) throw Error(ErrorCode::ParamOutOfRange, "icosphere level must be in [0, 7]");
  const double p = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> v = {{-1, p, 0}, {1, p, 0},  {-1, -p, 0}, {1, -p, 0}, {0, -1, p},  {0, 1, p},
                         {0, -1, -p}, {0, 1, -p}, {p, 0, -1},  {p, 0, 1},  {-p, 0, -1}, {-p, 0, 1}};
  for (auto& x : v) x.normalize();
  std::vector<std::array<std::size_t, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      const auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      mid.emplace(key, v.size() - 1);
      return v.size() - 1;
    };
    std::vector<std::array<std::size_t, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& t : f) {
      const std::size_t a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]), c = midpoint(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    f.swap(next);
  }
  Icosphere out;
  out.vertices = v;
  out.neighbors.resize(v.size());
  for (const auto& t : f) {
    for (int e = 0; e < 3; ++e) {
      out.neighbors[t[e]].push_back(t[(e + 1) % 3]);
      out.neighbors[t[(e + 1) % 3]].push_back(t[e]);
    }
  }
  for (auto& nb : out.neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return out;
}

namespace {

// Angular distance from unit u to the geodesic arc from a to b.
double arc_distance(const Vec3& u, const Vec3& a, const Vec3& b) {
  auto angle = [](const Vec3& x, const Vec3& y) { return std::atan2(x.cross(y).norm(), x.dot(y)); };
  const double ends = std::min(angle(u, a), angle(u, b));
  const Vec3 n = a.cross(b);
  const double nn = n.norm();
  if (nn < 1e-15) return ends;
  const Vec3 nu = n / nn;
  const Vec3 p = u - u.dot(nu) * nu;
  if (p.norm() < 1e-15) return ends;
  if (a.cross(p).dot(nu) >= 0.0 && p.cross(b).dot(nu) >= 0.0) return std::min(ends, std::asin(std::min(1.0, std::abs(u.dot(nu)))));
  return ends;
}

}  // namespace

double SphereScan::max_deviation() const {
  double m = 0.0;
  for (const auto& c : components) m = std::max(m, c.max_deviation);
  return m;
}

SphereScan scan_v(const Tantrix& t, int level, double band_deg) {
  const Icosphere ico = icosphere(level);
  const std::size_t nv = ico.vertices.size();
  SphereScan out;
  out.v = ico.vertices;
  out.band_radius = band_deg * kPi / 180.0;
  out.f.assign(nv, 0.0);
  out.in_band.assign(nv, false);
  out.component.assign(nv, -1);
  std::vector<Vec3> anti(t.t.size());
  for (std::size_t i = 0; i < t.t.size(); ++i) anti[i] = -t.t[i];
  std::vector<char> band(nv, 0);
  parallel_for(nv, [&](std::size_t k) {
    const Vec3& u = ico.vertices[k];
    double d = kPi;
    for (std::size_t i = 0; i + 1 < anti.size() && d >= out.band_radius; ++i) {
      d = std::min(d, arc_distance(u, anti[i], anti[i + 1]));
    }
    if (anti.size() == 1) d = std::atan2(u.cross(anti[0]).norm(), u.dot(anti[0]));
    band[k] = d < out.band_radius ? 1 : 0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.t.size(); ++i) total += geom::unit_solid_angle(u, t.t[i], t.t[i + 1]);
    out.f[k] = total / kTwoPi;
  });
  for (std::size_t k = 0; k < nv; ++k) out.in_band[k] = band[k] != 0;
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t k = 0; k < nv; ++k) {
    if (out.in_band[k] || out.component[k] >= 0) continue;
    ComponentSummary cs;
    cs.id = next;
    std::vector<std::size_t> members;
    out.component[k] = next;
    stack.push_back(k);
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (std::size_t y : ico.neighbors[x]) {
        if (!out.in_band[y] && out.component[y] < 0) {
          out.component[y] = next;
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    cs.count = members.size();
    for (std::size_t x : members) cs.mean += out.f[x];
    cs.mean /= static_cast<double>(cs.count);
    for (std::size_t x : members) cs.max_deviation = std::max(cs.max_deviation, std::abs(out.f[x] - cs.mean));
    out.components.push_back(cs);
    ++next;
  }
  if (out.components.empty()) throw Error(ErrorCode::EmptyComponent, "every grid direction lies in the exclusion band");
  return out;
}

std::string scan_csv(const SphereScan& scan) {
  std::ostringstream os;
  os << "v_x,v_y,v_z,f,component_id,in_band\n";
  char buf[160];
  for (std::size_t k = 0; k < scan.v.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%d\n", scan.v[k].x(), scan.v[k].y(), scan.v[k].z(),
                  scan.f[k], scan.component[k], scan.in_band[k] ? 1 : 0);
    os << buf;
  }
  return os.str();
}

}  // namespace ribbonlink
