#include "doctest.h"

#include "ribbonlink/figures.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/io.hpp"

#include <json.hpp>

using namespace ribbonlink;

namespace {

void check_same(const FramedCurve& a, const FramedCurve& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.closed() == b.closed());
  CHECK(a.L() == b.L());
  CHECK(a.M() == b.M());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].s == b[i].s);
    CHECK(a[i].r == b[i].r);
    CHECK(a[i].d1 == b[i].d1);
  }
}

ErrorCode parse_code(const std::string& text) {
  try {
    (void)read_curve(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::UnknownFamily;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("curve documents round-trip every double") {
  const FramedCurve c = trefoil(300);
  const CurveDocument d = read_curve(write_curve(c, {{"family", "trefoil"}}));
  check_same(c, d.curve);
  CHECK(d.metadata.at("family") == "trefoil");
  CHECK(detect_kind(write_curve(c)) == DocumentKind::Curve);
  const FramedCurve open = open_helix(1.0, 0.5, 2.5, 77);
  check_same(open, read_curve(write_curve(open)).curve);
}

TEST_CASE("closure specs survive a round trip") {
  ClosureSpec spec;
  spec.normal = Vec3(0.0, 1.0, 0.0);
  spec.rho = 0.3;
  spec.w = 0.7;
  spec.side = -1;
  spec.far_offset = 2.5;
  const CurveDocument d = read_curve(write_curve(twisted_line(1.0, 0.0, 10), {}, spec));
  REQUIRE(d.closure.has_value());
  CHECK(d.closure->normal == spec.normal);
  CHECK(d.closure->rho == spec.rho);
  CHECK(d.closure->w == spec.w);
  CHECK(d.closure->side == -1);
  CHECK(d.closure->far_offset == spec.far_offset);
}

TEST_CASE("curve sets and homotopies round-trip") {
  const auto hp = hopf_pair(64);
  const std::string set = write_curve_set({hp.first, hp.second}, {{"family", "hopf"}});
  CHECK(detect_kind(set) == DocumentKind::CurveSet);
  const auto docs = read_curve_set(set);
  REQUIRE(docs.size() == 2);
  check_same(hp.first, docs[0].curve);
  check_same(hp.second, docs[1].curve);

  const Homotopy h = fig1_homotopy("ab", {89.0, 40.0, 5});
  const std::string text = write_homotopy(h);
  CHECK(detect_kind(text) == DocumentKind::Homotopy);
  const Homotopy back = read_homotopy(text);
  REQUIRE(back.size() == h.size());
  CHECK(back.lambda() == h.lambda());
  CHECK(back.L() == h.L());
  CHECK(back.M() == h.M());
  for (std::size_t k = 0; k < h.size(); ++k) check_same(h.slice(k), back.slice(k));
  CHECK(write_homotopy(back) == text);
}

TEST_CASE("emitted documents carry the format version") {
  const auto j = nlohmann::json::parse(write_curve(circle(1.0, 8)));
  CHECK(j.at("format_version") == kFormatVersion);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK(parse_code("not json") == ErrorCode::ParseError);
  CHECK(parse_code("{}") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"format_version":"999","closed":false,"samples":[]})") == ErrorCode::ParseError);
  auto j = nlohmann::json::parse(write_curve(circle(1.0, 8)));
  j["samples"][0]["r"] = "oops";
  CHECK(parse_code(j.dump()) == ErrorCode::ParseError);
  CHECK_THROWS_AS(read_homotopy(write_curve(circle(1.0, 8))), Error);
}

}  // TEST_SUITE
