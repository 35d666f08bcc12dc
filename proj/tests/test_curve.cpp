#include "doctest.h"

#include "ribbonlink/curve.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/invariants.hpp"

#include <cmath>

using namespace ribbonlink;

namespace {

// Planar figure-eight (lemniscate) that crosses itself at the origin.
FramedCurve lemniscate(std::size_t n) {
  return sample_closed([](double u) { return Vec3(std::sin(u), std::sin(u) * std::cos(u), 0.0); },
                       [](double) { return Vec3::UnitZ(); }, n);
}

double max_frame_defect(const DirectorFrame& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.d1.size(); ++i) {
    worst = std::max({worst, std::abs(f.d1[i].norm() - 1.0), std::abs(f.d2[i].norm() - 1.0),
                      std::abs(f.d3[i].norm() - 1.0), std::abs(f.d1[i].dot(f.d2[i])),
                      std::abs(f.d1[i].dot(f.d3[i])), std::abs(f.d2[i].dot(f.d3[i]))});
  }
  return worst;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("straight untwisted segment has the constant frame") {
  const FramedCurve c = twisted_line(1.0, 0.0, 32);
  const DirectorFrame f = build_frame(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK((f.d1[i] - Vec3::UnitX()).norm() < 1e-12);
    CHECK((f.d2[i] - Vec3::UnitY()).norm() < 1e-12);
    CHECK((f.d3[i] - Vec3::UnitZ()).norm() < 1e-12);
  }
}

TEST_CASE("circle with normal director has constant binormal d2") {
  const FramedCurve c = circle(1.0, 128);
  const DirectorFrame f = build_frame(c);
  const Vec3 d2 = f.d2.front();
  CHECK(std::abs(std::abs(d2.z()) - 1.0) < 1e-9);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK((f.d2[i] - d2).norm() < 1e-9);
    const Vec3 radial(c[i].r.x(), c[i].r.y(), 0.0);
    CHECK(std::abs(f.d3[i].dot(radial)) < 1e-9);
  }
}

TEST_CASE("closed helix frame is orthonormal and right-handed") {
  const FramedCurve c = closed_helix(2.0, 0.5, 5, 1024);
  const DirectorFrame f = build_frame(c);
  CHECK(max_frame_defect(f) < 1e-12);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(f.d1[i].cross(f.d2[i]).dot(f.d3[i]) - 1.0) < 1e-9);
  }
}

TEST_CASE("validate accepts a sampled circle") {
  const ValidationReport rep = validate(circle(1.0, 256));
  CHECK(rep.ok);
  for (const auto& chk : rep.checks) CHECK_MESSAGE(chk.passed, chk.name);
}

TEST_CASE("validate reports a duplicated interior point with its index") {
  const FramedCurve base = circle(1.0, 64);
  std::vector<Sample> s = base.samples();
  s[10].r = s[9].r;
  const FramedCurve bad(s, true);
  const ValidationReport rep = validate(bad);
  CHECK_FALSE(rep.ok);
  const Check* reg = rep.find("regular");
  REQUIRE(reg != nullptr);
  CHECK_FALSE(reg->passed);
  REQUIRE(reg->index.has_value());
  CHECK(*reg->index == 10);
}

TEST_CASE("validate rejects a self-crossing planar figure-eight") {
  const ValidationReport rep = validate(lemniscate(256));
  CHECK_FALSE(rep.ok);
  const Check* clr = rep.find("non_self_intersection");
  REQUIRE(clr != nullptr);
  CHECK_FALSE(clr->passed);
  CHECK(clr->worst < 1e-6);
}

TEST_CASE("validate flags a corner at the seam") {
  std::vector<Sample> s = circle(1.0, 256).samples();
  s.front().r *= 1.0 + 1e-4;
  s.back().r = s.front().r;
  const ValidationReport rep = validate(FramedCurve(s, true));
  const Check* seam = rep.find("seam");
  REQUIRE(seam != nullptr);
  CHECK_FALSE(seam->passed);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("validation passes again after doubling the samples") {
  for (const FramedCurve& c : {circle(1.0, 128, 1), closed_helix(2.0, 0.5, 5, 512), trefoil(512)}) {
    REQUIRE(validate(c).ok);
    CHECK(validate(resample(c, 2 * c.vertex_count())).ok);
  }
}

TEST_CASE("resample circle 64 to 256 keeps the radius") {
  const FramedCurve c = resample(circle(1.0, 64), 256);
  CHECK(c.vertex_count() == 256);
  double worst = 0.0;
  for (const auto& s : c.samples()) worst = std::max(worst, std::abs(s.r.norm() - 1.0));
  CHECK(worst < 1e-6);
  CHECK(validate(c).ok);
}

TEST_CASE("resample to the same count is the identity on uniform curves") {
  const FramedCurve c = circle(1.0, 200);
  const FramedCurve r = resample(c, 200);
  REQUIRE(r.size() == c.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, (r[i].r - c[i].r).norm());
  CHECK(worst < 1e-10);
}

TEST_CASE("resample rejects fewer than four samples") {
  try {
    (void)resample(circle(1.0, 64), 3);
    FAIL("expected TooFewSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewSamples);
  }
}

TEST_CASE("open helix twist is unchanged by refinement 100 to 1000") {
  const FramedCurve c = open_helix(1.0, 0.5, 3.0, 100);
  const double a = twist(c);
  const double b = twist(resample(c, 1000));
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("tantrix of a planar circle is a great circle") {
  const Tantrix t = tantrix(circle(1.0, 128));
  for (const Vec3& v : t.t) {
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK(std::abs(v.z()) < 1e-12);
  }
}

TEST_CASE("tantrix of a straight segment is a single point") {
  const Tantrix t = tantrix(twisted_line(2.0, 1.0, 40));
  for (const Vec3& v : t.t) CHECK((v - Vec3::UnitZ()).norm() < 1e-12);
}

TEST_CASE("tantrix of a closed helix stays near its latitude and closes") {
  const double R = 2.0, a = 0.5;
  const int q = 5;
  const FramedCurve c = closed_helix(R, a, q, 2048);
  const Tantrix t = tantrix(c);
  REQUIRE(t.closed);
  CHECK((t.t.front() - t.t.back()).norm() < 1e-12);
  CHECK(std::abs(t.t.front().norm() - 1.0) < 1e-12);
}

TEST_CASE("coincident samples raise DegenerateTangent") {
  std::vector<Sample> s = twisted_line(1.0, 0.0, 10).samples();
  s[4].r = s[3].r;
  s[4].s = s[3].s;
  try {
    (void)tantrix(FramedCurve(s, false));
    FAIL("expected DegenerateTangent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTangent);
  }
}

TEST_CASE("build_frame commutes with resample") {
  for (const FramedCurve& c : {circle(1.0, 128, 3), closed_helix(2.0, 0.5, 5, 512), trefoil(512)}) {
    const FramedCurve r = resample(c, 2 * c.vertex_count());
    CHECK(max_frame_defect(build_frame(r)) < 1e-8);
    CHECK(max_frame_defect(build_frame(resample(with_projected_directors(c), 2 * c.vertex_count()))) < 1e-8);
  }
}

}  // TEST_SUITE
