#include "doctest.h"

#include "ribbonlink/euler.hpp"
#include "ribbonlink/figures.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/homotopy.hpp"
#include "ribbonlink/rod_builder.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace ribbonlink;

namespace {

// Helical rod: constant theta, psi advancing linearly, phi chosen for a uniform twist.
FramedCurve helical_rod(double theta0, double turns, double length, std::size_t n) {
  const EulerBasis basis = euler_basis(Vec3::UnitZ());
  const double rate = kTwoPi * turns / length;
  auto angles = [=](double s) { return Vec3(0.3 * rate * s, rate * s, theta0); };
  return build_rod(euler_frame_fn(angles, basis), length, n);
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("straight rod: theta vanishes and phi + psi carries the rotation") {
  const double turns = 1.25;
  const FramedCurve rod = twisted_line(2.0, turns, 301);
  const EulerAngles a = extract_euler(rod, Vec3::UnitZ());
  for (double th : a.theta) CHECK(std::abs(th) < 1e-12);
  CHECK(a.chi(a.s.size() - 1) - a.chi(0) == doctest::Approx(kTwoPi * turns).epsilon(1e-9));
  CHECK(end_rotation_euler(rod, Vec3::UnitZ()) == doctest::Approx(kTwoPi * turns).epsilon(1e-9));
  CHECK(euler_twist(a) == doctest::Approx(turns).epsilon(1e-9));
  CHECK(std::abs(euler_writhe(a)) < 1e-12);
}

TEST_CASE("tangent reaching the opposite pole is singular") {
  const FramedCurve rod = build_rod_transport(
      [](double s) { return Vec3(std::sin(kPi * s), 0.0, std::cos(kPi * s)); }, 1.0, 201, Vec3::UnitY());
  try {
    (void)extract_euler(rod, Vec3::UnitZ());
    FAIL("expected PolarSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PolarSingularity);
  }
}

TEST_CASE("helical rod reconstructs from its angles") {
  const FramedCurve rod = helical_rod(0.8, 2.0, 10.0, 801);
  const EulerAngles a = extract_euler(rod, Vec3::UnitZ());
  CHECK(reconstruction_error(a, build_frame(rod)) < 1e-8);
  for (double th : a.theta) CHECK(std::abs(th - 0.8) < 1e-3);
}

TEST_CASE("planar rod in a plane containing e3 has no euler writhe") {
  // The tangent stays on one side of e3, so psi is constant.
  const FramedCurve rod = build_rod_transport(
      [](double s) {
        const double a = 0.8 + 0.6 * std::sin(s);
        return Vec3(std::sin(a), 0.0, std::cos(a));
      },
      6.0, 601, Vec3::UnitY());
  const EulerAngles a = extract_euler(rod, Vec3::UnitZ());
  for (double p : a.psi) CHECK(p == doctest::Approx(a.psi.front()).epsilon(1e-12));
  CHECK(std::abs(euler_writhe(a)) < 1e-9);
  CHECK(std::abs(fuller_open_writhe(tantrix(rod), Vec3::UnitZ())) < 1e-8);
  CHECK(std::abs(fuller_open_writhe(tantrix(rod), Vec3(1.0, 0.0, 1.0).normalized())) < 1e-8);
}

TEST_CASE("single-integral writhe of a straight rod is zero") {
  CHECK(std::abs(fuller_open_writhe(tantrix(twisted_line(1.0, 2.0, 50)), Vec3::UnitZ())) < 1e-15);
}

TEST_CASE("euler writhe and the single integral agree on a helical rod") {
  const FramedCurve rod = helical_rod(0.8, 2.0, 10.0, 1601);
  const EulerAngles a = extract_euler(rod, Vec3::UnitZ());
  CHECK(std::abs(euler_writhe(a) - fuller_open_writhe(tantrix(rod), Vec3::UnitZ())) < 1e-6);
  CHECK(euler_writhe(a) + euler_twist(a) ==
        doctest::Approx(end_rotation_euler(rod, Vec3::UnitZ()) / kTwoPi).epsilon(1e-9));
}

TEST_CASE("euler writhe matches the open writhe of a random class A2 rod") {
  const Homotopy h = random_a2_homotopy(1);
  const FramedCurve rod = h.rod(h.size() - 1);
  const OpenWritheResult w = open_writhe(h);
  REQUIRE(w.route_single_integral.has_value());
  CHECK(std::abs(euler_writhe(extract_euler(rod, Vec3::UnitZ())) - *w.route_single_integral) < 1e-4);
}

TEST_CASE("end rotation from homotopies") {
  std::vector<double> lam;
  std::vector<FramedCurve> rods;
  for (int k = 0; k < 5; ++k) {
    lam.push_back(k / 4.0);
    rods.push_back(twisted_line(2.0, 0.0, 201));
  }
  ClosureSpec spec;
  spec.normal = Vec3::UnitX();
  CHECK(std::abs(end_rotation_homotopy(close_family(lam, rods, spec))) < 1e-12);

  for (double n : {1.0, -2.0}) {
    lam.clear();
    rods.clear();
    for (int k = 0; k < 33; ++k) {
      lam.push_back(k / 32.0);
      rods.push_back(twisted_line(2.0, n * k / 32.0, 201));
    }
    CHECK(std::abs(end_rotation_homotopy(close_family(lam, rods, spec)) - kTwoPi * n) < 1e-4);
  }
}

TEST_CASE("first figure end rotation is minus four pi by both methods") {
  const Homotopy ab = fig1_homotopy("ab");
  CHECK(std::abs(end_rotation_homotopy(ab) + 4.0 * kPi) < 1e-2);
  const FramedCurve c = fig1_rod('c');
  CHECK(std::abs(end_rotation_euler(c, Vec3::UnitZ()) + 4.0 * kPi) < 1e-2);
}

TEST_CASE("coarse slice grids are rejected") {
  // One step of 0.4 turns exceeds the quarter-turn limit.
  std::vector<double> lam{0.0, 1.0};
  std::vector<FramedCurve> rods{twisted_line(2.0, 0.0, 201), twisted_line(2.0, 0.4, 201)};
  ClosureSpec spec;
  spec.normal = Vec3::UnitX();
  try {
    (void)end_rotation_homotopy(close_family(lam, rods, spec));
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("circulation of phi + psi around the homotopy rectangle vanishes") {
  const Circulation c = euler_circulation(random_a2_homotopy(2), Vec3::UnitZ());
  CHECK(std::abs(c.value) < 1e-4);
}

TEST_CASE("rotation derivative matches finite differences") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Vec3 v = random_unit(rng), w = random_unit(rng), t = random_unit(rng);
    const Vec3 tdot = random_unit(rng).cross(t);
    const RotationDerivative d = rotation_derivative(v, w, t, tdot, 1e-4);
    CHECK(std::abs(d.analytic - d.finite_difference) < 1e-6);
  }
}

TEST_CASE("icosphere sizes and neighbors") {
  for (int level : {3, 4, 5}) {
    const Icosphere s = icosphere(level);
    CHECK(s.vertices.size() == 10 * (std::size_t{1} << (2 * level)) + 2);
    std::size_t five = 0;
    for (const auto& nb : s.neighbors) five += nb.size() == 5;
    CHECK(five == 12);
  }
}

TEST_CASE("sphere scans are constant on components and jump by two") {
  const Homotopy planar = fig4_homotopy('b');
  const SphereScan p = scan_v(tantrix(planar.rod(0)), 5);
  REQUIRE(p.components.size() == 2);
  CHECK(p.max_deviation() < 1e-5);
  CHECK(std::abs(std::abs(p.components[0].mean - p.components[1].mean) - 2.0) < 1e-2);

  const Homotopy b = fig3_homotopy('b');
  const SphereScan h = scan_v(tantrix(b.rod(b.size() - 1)), 5);
  REQUIRE(h.components.size() == 2);
  CHECK(h.max_deviation() < 1e-6);
  CHECK(std::abs(std::abs(h.components[0].mean - h.components[1].mean) - 2.0) < 1e-2);
}

TEST_CASE("scan csv lists one row per direction") {
  const SphereScan s = scan_v(tantrix(fig4_homotopy('b').rod(0)), 2);
  const std::string csv = scan_csv(s);
  CHECK(csv.rfind("v_x,v_y,v_z,f,component_id,in_band\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == s.v.size() + 1);
}

}  // TEST_SUITE
