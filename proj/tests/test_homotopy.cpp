#include "doctest.h"

#include "ribbonlink/figures.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/homotopy.hpp"
#include "ribbonlink/invariants.hpp"

#include <cmath>

using namespace ribbonlink;

namespace {

std::vector<double> grid(std::size_t n) {
  std::vector<double> l(n);
  for (std::size_t k = 0; k < n; ++k) l[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  return l;
}

ClosureSpec x_normal() {
  ClosureSpec s;
  s.normal = Vec3::UnitX();
  return s;
}

// Straight rod whose s = L end turns through `turns` revolutions over the homotopy.
Homotopy end_twist(double turns, std::size_t slices = 33) {
  const auto lam = grid(slices);
  std::vector<FramedCurve> rods;
  for (double l : lam) rods.push_back(twisted_line(2.0, turns * l, 201));
  return close_family(lam, rods, x_normal(), "straight");
}

Homotopy constant(const FramedCurve& rod, const ClosureSpec& spec = x_normal(), std::size_t slices = 5) {
  return close_family(grid(slices), std::vector<FramedCurve>(slices, rod), spec, "constant");
}

}  // namespace

TEST_SUITE("homotopy") {

TEST_CASE("constant homotopy on a planar curve passes every condition") {
  const Homotopy h = constant(twisted_line(2.0, 0.0, 101));
  const HomotopyReport rep = validate_homotopy(h);
  CHECK(rep.ok);
  CHECK(rep.min_nonopposition == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.constant_end_tangents);
  CHECK(rep.straight_reference);
  for (const auto& c : rep.conditions) CHECK(c.status != Status::Fail);
}

TEST_CASE("slices share one grid with L and M on nodes") {
  const Homotopy h = end_twist(1.0, 9);
  for (const auto& s : h.slices()) {
    REQUIRE(s.size() == h.front().size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].s == h.front()[i].s);
    CHECK(s.index_of(h.L()).has_value());
    CHECK(s.s_end() == h.M());
  }
}

TEST_CASE("writhe series of a constant homotopy is constant") {
  const WritheSeries w = writhe_along(constant(fig1_rod('c'), fig1_closure()));
  for (double v : w.writhe) CHECK(v == doctest::Approx(w.writhe.front()).epsilon(1e-12));
  CHECK(w.jumps.empty());
}

TEST_CASE("passing the rod through itself flips the link by two") {
  const WritheSeries l = link_along(fig1_looping_path());
  REQUIRE(!l.jumps.empty());
  double total = 0.0;
  for (auto k : l.jumps) total += l.writhe[k + 1] - l.writhe[k];
  CHECK(std::abs(std::abs(total) - 2.0) < 0.1);
}

TEST_CASE("end tangents and references") {
  CHECK(end_tangent_constancy(end_twist(1.0, 5)));
  CHECK(straight_reference(end_twist(1.0, 5)));
  CHECK(end_tangent_constancy(random_a2_homotopy(3)));
  CHECK_FALSE(straight_reference(constant(fig1_rod('c'), fig1_closure())));
}

TEST_CASE("open writhe of a planar reference homotopy is zero") {
  const OpenWritheResult w = open_writhe(constant(twisted_line(2.0, 0.0, 101)));
  CHECK(std::abs(w.route_polygonal) < 1e-9);
  REQUIRE(w.route_single_integral.has_value());
  CHECK(std::abs(*w.route_single_integral) < 1e-9);
  CHECK(w.agree);
}

TEST_CASE("open link of straight rods") {
  CHECK(std::abs(open_link(constant(twisted_line(2.0, 0.0, 101))).link) < 1e-9);
  for (double n : {1.0, 3.0, -2.0}) {
    const Homotopy h = end_twist(n);
    const OpenLinkResult r = open_link(h);
    CHECK(std::abs(r.link - n) < 1e-6);
    CHECK(std::abs(r.residual) < 1e-4);
    // Crossing-count oracle for the closed ribbon.
    const FramedCurve& c = h.back();
    const double eps = 1e-3 * c.s_end();
    const int lk = linking_by_crossings(c.polygon(), pushoff(c, eps), Vec3(0.37, 0.21, 0.9).normalized());
    CHECK(std::abs(lk - (r.closed_link)) < 1e-6);
    CHECK(std::abs(r.closure_twist) < 1e-6);
  }
}

TEST_CASE("first figure stages have open link minus two turns") {
  const OpenLinkResult b = open_link(fig1_homotopy("ab"));
  CHECK(std::abs(b.link + 2.0) < 1e-2);
  const OpenLinkResult c = open_link(fig1_homotopy("ac"));
  CHECK(std::abs(c.link + 2.0) < 1e-2);
  CHECK(std::abs(c.residual) < 1e-4);
}

TEST_CASE("valid homotopies give matching single-integral and closed writhe routes") {
  for (const Homotopy& h : {fig1_homotopy("ac"), random_a2_homotopy(5)}) {
    const HomotopyReport rep = validate_homotopy(h);
    REQUIRE(rep.ok);
    const OpenWritheResult w = open_writhe(h);
    REQUIRE(w.route_single_integral.has_value());
    CHECK(std::abs(w.route_polygonal - *w.route_single_integral) < 1e-3);
    CHECK(w.agree);
    CHECK(w.homotopy_valid);
  }
}

TEST_CASE("third figure: formed loop passes, continuations oppose tangents") {
  const Homotopy b = fig3_homotopy('b');
  const HomotopyReport rb = validate_homotopy(b);
  CHECK(rb.ok);
  CHECK(rb.min_nonopposition > -1.0 + 1e-3);
  CHECK(std::abs(open_writhe(b).route_polygonal + 1.0) < 0.1);

  const Homotopy d = fig3_homotopy('d');
  const HomotopyReport rd = validate_homotopy(d);
  CHECK(rd.condition(5).status == Status::Fail);
  CHECK(rd.condition(5).at_s.has_value());
  CHECK(rd.condition(5).at_lambda.has_value());
  CHECK(end_tangent_constancy(d));
  CHECK(std::abs(open_writhe(d).route_polygonal + 2.0) < 0.1);

  const Homotopy c = fig3_homotopy('c');
  CHECK(validate_homotopy(c).condition(5).status == Status::Fail);
  CHECK_FALSE(end_tangent_constancy(c));
  const WritheSeries wc = writhe_along(c);
  CHECK(std::abs(wc.writhe.back() - open_writhe(b).route_polygonal - 1.0) < 0.1);
}

TEST_CASE("plane fit") {
  const PlaneFit f = fit_plane({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(std::abs(std::abs(f.normal.z()) - 1.0) < 1e-12);
  CHECK(f.deviation < 1e-12);
}

}  // TEST_SUITE
