#include "doctest.h"

#include "ribbonlink/generators.hpp"
#include "ribbonlink/geometry.hpp"
#include "ribbonlink/invariants.hpp"

#include <cmath>
#include <vector>

using namespace ribbonlink;

namespace {

FramedCurve transformed(const FramedCurve& c, const Eigen::Matrix3d& A, const Vec3& shift) {
  std::vector<Sample> s = c.samples();
  for (auto& x : s) {
    x.r = A * x.r + shift;
    x.d1 = A * x.d1;
  }
  return FramedCurve(s, c.closed(), c.L(), c.M());
}

FramedCurve mirrored(const FramedCurve& c) { return transformed(c, Eigen::Vector3d(1, 1, -1).asDiagonal(), Vec3::Zero()); }

// Same closed curve started at vertex k.
FramedCurve rerooted(const FramedCurve& c, std::size_t k) {
  const std::size_t n = c.vertex_count();
  std::vector<Sample> s(n + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    s[i] = c[(k + i) % n];
    if (i > 0) acc += (s[i].r - s[i - 1].r).norm();
    s[i].s = acc;
  }
  return FramedCurve(s, true);
}

// Open rod with a small smooth out-of-plane bump on a planar arc.
FramedCurve arc_curve(double bump, std::size_t n) {
  return sample_closed(
      [&](double u) {
        return Vec3(std::cos(u) + 0.3 * std::cos(2 * u), std::sin(u), bump * std::sin(3 * u) * std::cos(u));
      },
      [](double) { return Vec3::UnitZ(); }, n);
}

const Vec3 kDir = Vec3(0.31, 0.17, 0.93).normalized();

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("twist of straight rods") {
  CHECK(std::abs(twist(twisted_line(3.0, 0.0, 64))) < 1e-14);
  for (double n : {1.0, 2.0, -3.0}) CHECK(twist(twisted_line(3.0, n, 400)) == doctest::Approx(n).epsilon(1e-12));
}

TEST_CASE("twist of a circle with normal director is zero") {
  // Finite-difference oracle: d1 stays radial, so its rotation angle in the normal plane is constant.
  CHECK(std::abs(twist(circle(1.0, 256))) < 1e-12);
}

TEST_CASE("twist over a sub-interval is additive") {
  const FramedCurve c = open_helix(1.0, 0.5, 3.0, 600);
  const double mid = 0.37 * c.L();
  CHECK(twist(c, c.s_begin(), mid) + twist(c, mid, c.s_end()) == doctest::Approx(twist(c)).epsilon(1e-12));
  CHECK_THROWS_AS(twist(c, 0.0, 2.0 * c.L()), Error);
}

TEST_CASE("gauss link on generator pairs") {
  const auto ul = unlinked_pair(256);
  CHECK(std::abs(gauss_link(ul.first, ul.second)) < 1e-6);
  const auto hp = hopf_pair(256);
  CHECK(std::abs(std::abs(gauss_link(hp.first, hp.second)) - 1.0) < 1e-6);
  const auto dh = double_hopf_pair(256);
  CHECK(std::abs(std::abs(gauss_link(dh.first, dh.second)) - 2.0) < 1e-5);
}

TEST_CASE("gauss link matches crossing counts") {
  for (const auto& pr : {unlinked_pair(200), hopf_pair(200), double_hopf_pair(200)}) {
    const double g = gauss_link(pr.first, pr.second);
    for (const Vec3& p : {kDir, Vec3(0.8, -0.5, 0.33).normalized(), Vec3(-0.2, 0.9, 0.4).normalized()}) {
      CHECK(std::lround(g) == linking_by_crossings(pr.first, pr.second, p));
    }
  }
}

TEST_CASE("gauss link rejects curves that touch") {
  const FramedCurve a = circle(1.0, 64);
  CHECK_THROWS_AS(gauss_link(a, a), Error);
}

TEST_CASE("polygonal writhe basics") {
  CHECK(std::abs(writhe_polygonal(circle(1.0, 64))) < 1e-12);
  const FramedCurve t = trefoil(256);
  CHECK(writhe_polygonal(rerooted(t, 37)) == doctest::Approx(writhe_polygonal(t)).epsilon(1e-12));
  CHECK(writhe_polygonal(mirrored(t)) == doctest::Approx(-writhe_polygonal(t)).epsilon(1e-8));
}

TEST_CASE("quadrature writhe agrees with the polygon") {
  CHECK(std::abs(writhe_quadrature(arc_curve(0.0, 512)).value) < 1e-6);
  const FramedCurve t = trefoil(2048);
  CHECK(std::abs(writhe_quadrature(t).value - writhe_polygonal(t)) < 1e-4);
  CHECK(writhe_quadrature(mirrored(t)).value == doctest::Approx(-writhe_quadrature(t).value).epsilon(1e-8));
}

TEST_CASE("quadrature approaches the polygon at second order or better") {
  auto gap = [](std::size_t n) {
    const FramedCurve c = closed_helix(2.0, 0.5, 5, n);
    return std::abs(writhe_quadrature(c).value - writhe_polygonal(c));
  };
  const double e1 = gap(512), e2 = gap(1024);
  CHECK(e2 < e1 / 3.5);
}

TEST_CASE("directional writhing numbers") {
  CHECK(directional_writhing(circle(1.0, 64), Vec3::UnitZ()) == 0);
  // The trefoil's symmetry axis is e3; the projection has three crossings of one sign.
  const FramedCurve t = trefoil(512);
  const int w = directional_writhing(t, Vec3(0.01, 0.02, 1.0).normalized());
  CHECK(std::abs(w) == 3);
  CHECK(w == (writhe_polygonal(t) < 0 ? -3 : 3));
}

TEST_CASE("projection average matches the polygon") {
  const FramedCurve planar = arc_curve(0.0, 256);
  const InvariantReport p = writhe_projection_average(planar, 512, 1);
  CHECK(std::abs(p.value) <= 2.0 * p.stderr_estimate.value_or(0.0) + 1e-12);
  const FramedCurve t = trefoil(1024);
  const InvariantReport r = writhe_projection_average(t, 4096, 0);
  REQUIRE(r.stderr_estimate.has_value());
  CHECK(std::abs(r.value - writhe_polygonal(t)) < 3.0 * *r.stderr_estimate);
  const InvariantReport again = writhe_projection_average(t, 4096, 0);
  CHECK(again.value == r.value);
  CHECK(*again.stderr_estimate == *r.stderr_estimate);
}

TEST_CASE("tantrix area and the first Fuller relation") {
  const Tantrix great = tantrix(circle(1.0, 256));
  CHECK(tantrix_area(great) == doctest::Approx(kTwoPi).epsilon(1e-9));
  const FramedCurve h = closed_helix(2.0, 0.5, 5, 2048);
  CHECK(fuller_first_residual(tantrix_area(tantrix(h)), writhe_polygonal(h)) < 1e-3);
  const FramedCurve t = trefoil(2048);
  CHECK(fuller_first_residual(tantrix_area(tantrix(t)), writhe_polygonal(t)) < 1e-3);
}

TEST_CASE("latitude circle tantrix encloses the spherical cap") {
  for (int dir : {1, -1}) {
    Tantrix t;
    t.closed = true;
    const double th = 0.5;
    for (int i = 0; i <= 400; ++i) {
      const double u = dir * kTwoPi * i / 400.0;
      t.s.push_back(i);
      t.t.emplace_back(std::sin(th) * std::cos(u), std::sin(th) * std::sin(u), std::cos(th));
    }
    const double cap = kTwoPi * (1.0 - std::cos(th));
    const double area = tantrix_area(t);
    CHECK(std::min(std::abs(area - cap), std::abs(area - (4 * kPi - cap))) < 1e-3);
  }
}

TEST_CASE("fuller difference") {
  const Tantrix t0 = tantrix(arc_curve(0.0, 1024));
  CHECK(std::abs(fuller_difference(t0, t0)) < 1e-15);
  const FramedCurve r1 = arc_curve(0.15, 1024);
  CHECK(std::abs(fuller_difference(t0, tantrix(r1)) - writhe_polygonal(r1)) < 1e-5);
}

TEST_CASE("calugareanu white fuller on ribbons") {
  const CwfResult flat = check_cwf(circle(1.0, 512));
  CHECK(std::abs(flat.residual) < 1e-6);
  CHECK(std::abs(flat.link) < 1e-6);
  for (int n : {1, 3}) {
    const CwfResult r = check_cwf(circle(1.0, 512, n));
    CHECK(r.link == doctest::Approx(n).epsilon(1e-6));
    CHECK(r.twist == doctest::Approx(n).epsilon(1e-6));
    CHECK(std::abs(r.writhe) < 1e-9);
    CHECK(std::abs(r.residual) < 1e-5);
  }
  const CwfResult h512 = check_cwf(closed_helix(2.0, 0.5, 5, 512));
  const CwfResult h2048 = check_cwf(closed_helix(2.0, 0.5, 5, 2048));
  CHECK(std::abs(h2048.residual) < 1e-4);
  CHECK(std::abs(h2048.residual) < std::abs(h512.residual));
}

TEST_CASE("invariants are unchanged by rigid motions and re-rooting") {
  const FramedCurve t = trefoil(512);
  const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  const FramedCurve m = transformed(t, R, Vec3(3, -1, 2));
  CHECK(std::abs(writhe_polygonal(m) - writhe_polygonal(t)) < 1e-9);
  CHECK(std::abs(twist(m) - twist(t)) < 1e-9);
  const auto hp = hopf_pair(128);
  CHECK(std::abs(gauss_link(transformed(hp.first, R, Vec3::Ones()), transformed(hp.second, R, Vec3::Ones())) -
                 gauss_link(hp.first, hp.second)) < 1e-9);
  const FramedCurve rr = rerooted(t, 100);
  CHECK(std::abs(twist(rr) - twist(t)) < 1e-8);
  CHECK(std::abs(writhe_polygonal(rr) - writhe_polygonal(t)) < 1e-8);
}

TEST_CASE("mirror images negate writhe, twist and link") {
  const FramedCurve t = trefoil(512);
  CHECK(twist(mirrored(t)) == doctest::Approx(-twist(t)).epsilon(1e-9));
  const auto hp = hopf_pair(128);
  CHECK(gauss_link(mirrored(hp.first), mirrored(hp.second)) ==
        doctest::Approx(-gauss_link(hp.first, hp.second)).epsilon(1e-9));
}

TEST_CASE("segment pair solid angle reproduces the linking of two squares") {
  // Two interlocked unit squares: the sum over segment pairs is one full turn.
  const std::vector<Vec3> a{{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}};
  const std::vector<Vec3> b{{1, 1, -1}, {1, 1, 1}, {1, 3.5, 1}, {1, 3.5, -1}};
  CHECK(std::abs(std::abs(gauss_link(a, b)) - 1.0) < 1e-12);
}

}  // TEST_SUITE
