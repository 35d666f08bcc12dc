#include "ribbonlink/closure.hpp"

#include "ribbonlink/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ribbonlink {

Feasibility planar_closure_feasible(const FramedCurve& rod, const Tolerances& tol) {
  const Tantrix t = tantrix(rod);
  const std::size_t last = rod.index_of(rod.L()).value_or(rod.size() - 1);
  const Vec3 t0 = t.t.front();
  const Vec3 tL = t.t[last];
  const Vec3 chord = rod[last].r - rod[0].r;
  Feasibility f;
  const double len = chord.norm();
  if (len < 1e-12) {
    f.triple = 0.0;
    f.feasible = true;
    f.diagnosis = "ends coincide";
    return f;
  }
  f.triple = t0.dot(tL.cross(chord / len));
  f.feasible = std::abs(f.triple) < tol.coplanar;
  f.diagnosis = f.feasible ? "end tangents and chord are coplanar"
                           : "det[t(0), t(L), chord] = " + std::to_string(f.triple) + " is not zero";
  return f;
}

namespace {

struct Piece {
  bool arc = false;
  Vec3 a, b;         // straight piece
  Vec3 center, n, u; // arc: point(phi) = center + rho (-n cos phi + u sin phi)
  double rho = 0.0, angle = 0.0;
  double length() const { return arc ? rho * angle : (b - a).norm(); }
  Vec3 at(double d) const {
    if (!arc) return a + (b - a) * (d / std::max(length(), 1e-300));
    const double phi = d / rho;
    return center + rho * (-n * std::cos(phi) + u * std::sin(phi));
  }
};

std::vector<Piece> fillet_pieces(const std::vector<Vec3>& P, double rho) {
  const std::size_t m = P.size();
  if (m < 2) throw Error(ErrorCode::InfeasibleGeometry, "closure needs at least two corner points");
  std::vector<double> tangent_len(m, 0.0);
  std::vector<Vec3> dir(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const Vec3 d = P[k + 1] - P[k];
    if (d.norm() < 1e-12) throw Error(ErrorCode::InfeasibleGeometry, "repeated closure corner");
    dir[k] = d.normalized();
  }
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double gamma = std::acos(std::clamp(dir[k - 1].dot(dir[k]), -1.0, 1.0));
    if (gamma > kPi - 1e-6) throw Error(ErrorCode::InfeasibleGeometry, "closure reverses direction");
    tangent_len[k] = rho * std::tan(0.5 * gamma);
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (tangent_len[k] + tangent_len[k + 1] > (P[k + 1] - P[k]).norm() + 1e-12) {
      throw Error(ErrorCode::InfeasibleGeometry, "closure leg shorter than its fillets");
    }
  }
  std::vector<Piece> pieces;
  Vec3 cursor = P[0];
  for (std::size_t k = 1; k < m; ++k) {
    const Vec3 corner_in = P[k] - tangent_len[k] * dir[k - 1];
    Piece line;
    line.a = cursor;
    line.b = k + 1 < m ? corner_in : P[k];
    if (line.length() > 1e-14) pieces.push_back(line);
    if (k + 1 == m) break;
    cursor = P[k] + tangent_len[k] * dir[k];
    if (tangent_len[k] > 0.0) {
      Piece arc;
      arc.arc = true;
      arc.rho = rho;
      arc.u = dir[k - 1];
      arc.n = (dir[k] - dir[k].dot(arc.u) * arc.u).normalized();
      arc.center = corner_in + rho * arc.n;
      arc.angle = std::acos(std::clamp(dir[k - 1].dot(dir[k]), -1.0, 1.0));
      pieces.push_back(arc);
    }
  }
  return pieces;
}

}  // namespace

double fillet_polyline_length(const std::vector<Vec3>& corners, double rho) {
  double total = 0.0;
  for (const auto& p : fillet_pieces(corners, rho)) total += p.length();
  return total;
}

std::vector<Vec3> fillet_polyline(const std::vector<Vec3>& corners, double rho, std::size_t samples) {
  if (samples < 1) throw Error(ErrorCode::TooFewSamples, "closure needs at least one segment");
  const auto pieces = fillet_pieces(corners, rho);
  std::vector<double> cum{0.0};
  for (const auto& p : pieces) cum.push_back(cum.back() + p.length());
  const double total = cum.back();
  std::vector<Vec3> out;
  out.reserve(samples + 1);
  std::size_t k = 0;
  for (std::size_t j = 0; j <= samples; ++j) {
    const double d = total * static_cast<double>(j) / static_cast<double>(samples);
    while (k + 1 < pieces.size() && d > cum[k + 1]) ++k;
    out.push_back(pieces[k].at(std::clamp(d - cum[k], 0.0, pieces[k].length())));
  }
  out.front() = corners.front();
  out.back() = corners.back();
  return out;
}

ExtensionResult extend_director_twistless(const FramedCurve& closed, double L, double M) {
  if (!closed.closed()) throw Error(ErrorCode::NotClosed, "extend_director_twistless needs a closed curve");
  const auto iL = closed.index_of(L);
  if (!iL || std::abs(M - closed.s_end()) > 1e-12 * std::max(1.0, M)) {
    throw Error(ErrorCode::IntervalOutOfRange, "L and M must be sample parameters with M at the end");
  }
  const DirectorFrame f = build_frame(closed);
  std::vector<Sample> s = closed.samples();
  const std::size_t N = s.size();
  std::vector<Vec3> moved(N);
  moved[*iL] = f.d1[*iL];
  for (std::size_t i = *iL; i + 1 < N; ++i) {
    Vec3 d = geom::transport(moved[i], f.d3[i], f.d3[i + 1]);
    d -= d.dot(f.d3[i + 1]) * f.d3[i + 1];
    moved[i + 1] = d.normalized();
  }
  const double mismatch = geom::signed_angle(moved[N - 1], f.d1[0], f.d3[0]);
  for (std::size_t i = *iL; i < N; ++i) {
    const double frac = (s[i].s - L) / (M - L);
    s[i].d1 = geom::rotate(moved[i], f.d3[i], mismatch * frac);
  }
  for (std::size_t i = 0; i < *iL; ++i) s[i].d1 = f.d1[i];
  s.back().d1 = f.d1[0];
  s.front().d1 = f.d1[0];
  return {FramedCurve(std::move(s), true, closed.L(), closed.M()), mismatch};
}

ExtensionResult join_closure(const FramedCurve& rod, const std::vector<Vec3>& closure, std::optional<double> M) {
  if (rod.closed()) throw Error(ErrorCode::ParamOutOfRange, "join_closure needs an open rod");
  if (closure.size() < 3) throw Error(ErrorCode::TooFewSamples, "closure needs at least two segments");
  const double L = rod.s_end();
  const double scale = std::max(1.0, rod.polyline_length());
  if ((closure.front() - rod.samples().back().r).norm() > 1e-9 * scale ||
      (closure.back() - rod.samples().front().r).norm() > 1e-9 * scale) {
    throw Error(ErrorCode::JoinTangentMismatch, "closure does not start at the rod end and end at the rod start");
  }
  double length = 0.0;
  for (std::size_t j = 0; j + 1 < closure.size(); ++j) length += (closure[j + 1] - closure[j]).norm();
  const double Mv = M.value_or(L + length);
  if (!(Mv > L)) throw Error(ErrorCode::ParamOutOfRange, "M must exceed L");
  std::vector<Sample> s = rod.samples();
  const std::size_t K = closure.size() - 1;
  for (std::size_t j = 1; j <= K; ++j) {
    const double sj = j == K ? Mv : L + (Mv - L) * static_cast<double>(j) / static_cast<double>(K);
    s.push_back({sj, closure[j], rod.samples().back().d1});
  }
  s.back().r = rod.samples().front().r;
  s.back().d1 = rod.samples().front().d1;
  // Provisional directors on the closure only need to be non-tangent; transport replaces them.
  FramedCurve provisional(std::move(s), true, L, Mv);
  const auto t = tantrix(provisional);
  std::vector<Sample> fixed = provisional.samples();
  for (std::size_t i = rod.size(); i < fixed.size(); ++i) fixed[i].d1 = geom::any_perpendicular(t.t[i]);
  FramedCurve base(std::move(fixed), true, L, Mv);
  return extend_director_twistless(base, L, Mv);
}

std::vector<Vec3> closure_corners(const FramedCurve& rod, const ClosureSpec& spec, Vec3* normal_out,
                                  const Tolerances& tol) {
  if (rod.closed()) throw Error(ErrorCode::ParamOutOfRange, "closure needs an open rod");
  const Feasibility feas = planar_closure_feasible(rod, tol);
  if (!feas.feasible) throw Error(ErrorCode::InfeasibleGeometry, feas.diagnosis);
  if (!(spec.rho > 0.0) || !(spec.w > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "rho and w must be positive");
  const Tantrix t = tantrix(rod);
  const Vec3 b = t.t.front();
  const Vec3 a = t.t.back();
  const Vec3 A = rod.samples().back().r;
  const Vec3 B = rod.samples().front().r;
  Vec3 n = spec.normal;
  if (n.norm() < 1e-12) {
    const Vec3 chord = A - B;
    for (const Vec3& cand : {Vec3(b.cross(chord)), Vec3(a.cross(chord)), Vec3(b.cross(a))}) {
      if (cand.norm() > 1e-9 * std::max(1.0, chord.norm())) {
        n = cand;
        break;
      }
    }
    if (n.norm() < 1e-12) n = geom::any_perpendicular(b);
  }
  n.normalize();
  const double scale = std::max(1.0, rod.polyline_length());
  if (std::abs(n.dot(a)) > 1e-8 || std::abs(n.dot(b)) > 1e-8 || std::abs(n.dot(A - B)) > 1e-9 * scale) {
    throw Error(ErrorCode::InfeasibleGeometry, "rod ends are not in the closure plane");
  }
  if (normal_out) *normal_out = n;
  const Vec3 o = (static_cast<double>(spec.side >= 0 ? 1 : -1) * n.cross(a)).normalized();
  double max_o = -1e300, max_a = -1e300, max_b = -1e300;
  for (const auto& x : rod.samples()) {
    max_o = std::max(max_o, o.dot(x.r));
    max_a = std::max(max_a, a.dot(x.r - A));
    max_b = std::max(max_b, -b.dot(x.r - B));
  }
  const double clear = tol.clearance_rel * scale;
  double far = max_o + spec.w;
  if (spec.far_offset) {
    if (*spec.far_offset <= max_o + clear) {
      throw Error(ErrorCode::InfeasibleGeometry, "detour runs through the rod's bounding box");
    }
    far = *spec.far_offset;
  }
  const double ga = spec.exit_length.value_or(std::max(2.0 * spec.rho, max_a + spec.w));
  const double gb = spec.entry_length.value_or(std::max(2.0 * spec.rho, max_b + spec.w));
  if (ga <= max_a + clear || gb <= max_b + clear) {
    throw Error(ErrorCode::InfeasibleGeometry, "detour runs through the rod's bounding box");
  }
  const Vec3 A1 = A + ga * a;
  const Vec3 B1 = B - gb * b;
  const Vec3 F1 = A1 + (far - o.dot(A1)) * o;
  const Vec3 F2 = B1 + (far - o.dot(B1)) * o;
  return {A, A1, F1, F2, B1, B};
}

ClosureResult build_planar_closure(const FramedCurve& rod, const ClosureSpec& spec, const Tolerances& tol) {
  Vec3 n;
  const auto corners = closure_corners(rod, spec, &n, tol);
  std::size_t samples = spec.samples;
  if (samples == 0) {
    const double spacing = rod.polyline_length() / static_cast<double>(rod.size() - 1);
    samples = static_cast<std::size_t>(std::ceil(fillet_polyline_length(corners, spec.rho) / spacing));
    samples = std::max<std::size_t>(samples, 16);
  }
  const auto pts = fillet_polyline(corners, spec.rho, samples);
  double planarity = 0.0;
  for (const auto& p : pts) planarity = std::max(planarity, std::abs(n.dot(p - corners.front())));
  ExtensionResult ext = join_closure(rod, pts, spec.M);
  const ValidationReport rep = spec.require_valid ? validate(ext.curve, tol) : ValidationReport{};
  if (spec.require_valid && !rep.ok) {
    std::string failed;
    for (const auto& c : rep.checks) {
      if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    throw Error(ErrorCode::InfeasibleGeometry, "closed curve fails validation: " + failed);
  }
  return {std::move(ext.curve), n, ext.mismatch, planarity};
}

}  // namespace ribbonlink
