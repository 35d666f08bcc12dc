#include "doctest.h"

#include "ribbonlink/closure.hpp"
#include "ribbonlink/figures.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/homotopy.hpp"
#include "ribbonlink/invariants.hpp"
#include "ribbonlink/rod_builder.hpp"

#include <cmath>

using namespace ribbonlink;

namespace {

// Open rod leaving along e1 and arriving along e2 with the chord along e3.
FramedCurve skew_rod(std::size_t n) {
  std::vector<Sample> s(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    s[i].r = Vec3(u * (1 - u) * (1 - u), -u * u * (1 - u), u * u * (3 - 2 * u));
    if (i > 0) acc += (s[i].r - s[i - 1].r).norm();
    s[i].s = acc;
    s[i].d1 = Vec3(0.3, 0.4, 1.0).normalized();
  }
  return with_projected_directors(FramedCurve(s, false));
}

// Helical rod with straight leads along e3 at both ends; d1 is transported and then turned
// uniformly by `extra` radians over the length.
FramedCurve helix_rod(std::size_t n, double extra = 0.0) {
  const double L = 12.0;
  auto tangent = [L](double s) {
    const double th = 0.9 * smooth_step(s / 2.0) * smooth_step((L - s) / 2.0);
    return Vec3(std::sin(th) * std::cos(2.0 * s), std::sin(th) * std::sin(2.0 * s), std::cos(th));
  };
  return build_rod_transport(tangent, L, n, Vec3::UnitX(), [=](double s) { return extra * s / L; });
}

// Largest per-segment twist (turns) on the closure part (L, M].
double closure_twist_density(const FramedCurve& c) {
  const auto split = c.index_of(c.L());
  REQUIRE(split.has_value());
  double worst = 0.0;
  for (std::size_t i = *split; i + 1 < c.size(); ++i) {
    const double h = c[i + 1].s - c[i].s;
    worst = std::max(worst, std::abs(twist(c, c[i].s, c[i + 1].s)) * kTwoPi / h);
  }
  return worst;
}

}  // namespace

TEST_SUITE("closure") {

TEST_CASE("feasibility of planar closures") {
  CHECK(planar_closure_feasible(twisted_line(1.0, 0.0, 20)).feasible);
  // Equal end tangents are coplanar with any chord.
  CHECK(planar_closure_feasible(helix_rod(1201)).feasible);
  const Feasibility f = planar_closure_feasible(skew_rod(2001));
  CHECK_FALSE(f.feasible);
  CHECK(std::abs(std::abs(f.triple) - 1.0) < 1e-2);
  CHECK_FALSE(f.diagnosis.empty());
}

TEST_CASE("straight rod closes into a planar unwrithed curve") {
  const FramedCurve rod = twisted_line(1.0, 0.0, 41);
  const ClosureResult c = build_planar_closure(rod, ClosureSpec{});
  CHECK(c.planarity < 1e-9);
  CHECK(c.curve.closed());
  CHECK(validate(c.curve).ok);
  CHECK(std::abs(writhe_polygonal(c.curve)) < 1e-6);
  CHECK(std::abs(c.mismatch) < 1e-9);
}

TEST_CASE("joins are C1 and the closure lies in one plane") {
  const FramedCurve rod = helix_rod(1201);
  const ClosureResult c = build_planar_closure(rod, ClosureSpec{});
  CHECK(c.planarity < 1e-9 * c.curve.L());
  const Tantrix t = tantrix(c.curve);
  const std::size_t split = *c.curve.index_of(c.curve.L());
  const Tantrix tr = tantrix(rod);
  CHECK((t.t[split] - tr.t.back()).norm() < 1e-6);
  CHECK((t.t.front() - tr.t.front()).norm() < 1e-6);
}

TEST_CASE("looped and straight rods of the first figure close to writhes two apart") {
  const ClosureSpec spec = fig1_closure();
  const FramedCurve a = build_planar_closure(fig1_rod('a'), spec).curve;
  const FramedCurve c = build_planar_closure(fig1_rod('c'), spec).curve;
  CHECK(std::abs(std::abs(writhe_polygonal(c) - writhe_polygonal(a)) - 2.0) < 0.1);
}

TEST_CASE("detour through the rod's bounding box is infeasible") {
  ClosureSpec spec;
  spec.normal = Vec3::UnitX();
  spec.far_offset = 0.0;
  try {
    (void)build_planar_closure(helix_rod(601), spec);
    FAIL("expected InfeasibleGeometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleGeometry);
  }
  try {
    (void)build_planar_closure(skew_rod(200), ClosureSpec{});
    FAIL("expected InfeasibleGeometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleGeometry);
  }
}

TEST_CASE("planar rod with in-plane director transports without mismatch") {
  const FramedCurve rod = fig1_rod('a');
  ClosureSpec spec = fig1_closure();
  const ClosureResult c = build_planar_closure(rod, spec);
  CHECK(std::abs(c.mismatch) < 1e-9);
  CHECK(closure_twist_density(c.curve) < 1e-7);
}

TEST_CASE("twistless extension of a twisted straight rod") {
  for (double n : {1.0, 2.0, -3.0}) {
    const FramedCurve rod = twisted_line(2.0, n, 201);
    const FramedCurve c = build_planar_closure(rod, ClosureSpec{}).curve;
    CHECK(std::abs(twist(c, c.L(), *c.M())) < 1e-6);
    CHECK(std::abs(twist(c, 0.0, c.L()) - n) < 1e-9);
  }
}

TEST_CASE("twist density vanishes on the closure of a helix rod") {
  // Frame the rod so the transported director closes up without a mismatch.
  const double m = build_planar_closure(helix_rod(1201), ClosureSpec{}).mismatch;
  const ClosureResult c = build_planar_closure(helix_rod(1201, m), ClosureSpec{});
  CHECK(std::abs(c.mismatch) < 1e-9);
  CHECK(closure_twist_density(c.curve) < 1e-7);
}

TEST_CASE("fillet polyline length and sampling") {
  const std::vector<Vec3> corners{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  const double rho = 0.25;
  CHECK(fillet_polyline_length(corners, rho) == doctest::Approx(2.0 - 2 * rho + kPi * rho / 2).epsilon(1e-12));
  const auto pts = fillet_polyline(corners, rho, 200);
  REQUIRE(pts.size() == 201);
  CHECK((pts.front() - corners.front()).norm() < 1e-12);
  CHECK((pts.back() - corners.back()).norm() < 1e-12);
}

TEST_CASE("open link does not depend on the closure shape") {
  for (double n : {0.0, 1.0, -2.0}) {
    const FramedCurve ref = twisted_line(2.0, 0.0, 201);
    const FramedCurve rod = twisted_line(2.0, n, 201);
    ClosureSpec s1;
    s1.normal = Vec3::UnitX();
    ClosureSpec s2 = s1;
    s2.w = 1.3;
    s2.rho = 0.4;
    const double l1 = open_link(close_family({0.0, 1.0}, {ref, rod}, s1)).link;
    const double l2 = open_link(close_family({0.0, 1.0}, {ref, rod}, s2)).link;
    CHECK(std::abs(l1 - n) < 1e-3);
    CHECK(std::abs(l1 - l2) < 1e-3);
  }
}

}  // TEST_SUITE
