#include "ribbonlink/homotopy.hpp"

#include "ribbonlink/geometry.hpp"
#include "ribbonlink/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ribbonlink {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Indeterminate: return "indeterminate";
    case Status::NotChecked: return "not_checked";
  }
  return "unknown";
}

Homotopy::Homotopy(std::vector<double> lambda, std::vector<FramedCurve> slices, std::string reference_tag)
    : lambda_(std::move(lambda)), slices_(std::move(slices)), tag_(std::move(reference_tag)) {
  auto bad = [](const std::string& why) { return Error(ErrorCode::HomotopyInvalid, why); };
  if (lambda_.size() < 2 || lambda_.size() != slices_.size()) throw bad("need one slice per lambda and at least two");
  if (lambda_.front() != 0.0 || lambda_.back() != 1.0) throw bad("lambda grid must start at 0 and end at 1");
  for (std::size_t k = 0; k + 1 < lambda_.size(); ++k) {
    if (!(lambda_[k + 1] > lambda_[k])) throw bad("lambda grid must be increasing");
  }
  const FramedCurve& c0 = slices_.front();
  if (!c0.closed()) throw bad("slice 0 is not closed");
  L_ = c0.L();
  M_ = c0.s_end();
  const double tol = 1e-12 * std::max(1.0, M_);
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    const FramedCurve& c = slices_[k];
    if (!c.closed()) throw bad("slice " + std::to_string(k) + " is not closed");
    if (c.size() != c0.size()) throw bad("slice " + std::to_string(k) + " has a different grid size");
    if (std::abs(c.L() - L_) > tol) throw bad("slice " + std::to_string(k) + " has a different L");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (std::abs(c[i].s - c0[i].s) > tol) throw bad("slice " + std::to_string(k) + " is on a different s grid");
    }
  }
  const auto split = c0.index_of(L_, tol);
  if (!split || *split == 0 || *split + 1 >= c0.size()) throw bad("s = L is not an interior grid node");
  split_ = *split;
}

FramedCurve Homotopy::rod(std::size_t k) const {
  const auto& x = slices_.at(k).samples();
  return FramedCurve(std::vector<Sample>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(split_) + 1), false, L_);
}

Homotopy close_family(const std::vector<double>& lambda, const std::vector<FramedCurve>& rods, ClosureSpec spec,
                      std::string reference_tag, const Tolerances& tol) {
  if (rods.empty() || rods.size() != lambda.size()) throw Error(ErrorCode::HomotopyInvalid, "one rod per lambda");
  if (spec.normal.norm() < 1e-12) throw Error(ErrorCode::ParamOutOfRange, "close_family needs an explicit plane normal");
  spec.normal.normalize();
  // Probe each rod with generous fixed values to read off its own extent.
  double far = -1e300, ga = 0.0, gb = 0.0, len = 0.0;
  for (const auto& rod : rods) {
    const Tantrix t = tantrix(rod);
    const Vec3 a = t.t.back(), b = t.t.front();
    const Vec3 A = rod.samples().back().r, B = rod.samples().front().r;
    const Vec3 o = (static_cast<double>(spec.side >= 0 ? 1 : -1) * spec.normal.cross(a)).normalized();
    for (const auto& x : rod.samples()) {
      far = std::max(far, o.dot(x.r) + spec.w);
      ga = std::max(ga, a.dot(x.r - A) + spec.w);
      gb = std::max(gb, -b.dot(x.r - B) + spec.w);
    }
  }
  if (!spec.far_offset) spec.far_offset = far;
  if (!spec.exit_length) spec.exit_length = std::max(ga, 2.0 * spec.rho);
  if (!spec.entry_length) spec.entry_length = std::max(gb, 2.0 * spec.rho);
  for (const auto& rod : rods) len = std::max(len, fillet_polyline_length(closure_corners(rod, spec, nullptr, tol), spec.rho));
  const double L = rods.front().s_end();
  if (!spec.M) spec.M = L + len;
  if (spec.samples == 0) {
    const double spacing = rods.front().polyline_length() / static_cast<double>(rods.front().size() - 1);
    spec.samples = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(len / spacing)));
  }
  std::vector<FramedCurve> slices(rods.size());
  parallel_for(rods.size(), [&](std::size_t k) { slices[k] = build_planar_closure(rods[k], spec, tol).curve; });
  return Homotopy(lambda, std::move(slices), std::move(reference_tag));
}

PlaneFit fit_plane(const std::vector<Vec3>& pts) {
  PlaneFit out{Vec3::UnitZ(), Vec3::Zero(), 0.0};
  if (pts.empty()) return out;
  for (const auto& p : pts) out.centroid += p;
  out.centroid /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    const Vec3 d = p - out.centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  out.normal = es.eigenvectors().col(0).normalized();
  for (const auto& p : pts) out.deviation = std::max(out.deviation, std::abs((p - out.centroid).dot(out.normal)));
  return out;
}

namespace {

std::vector<Vec3> closure_points(const FramedCurve& c, std::size_t split) {
  std::vector<Vec3> pts;
  for (std::size_t i = split; i < c.size(); ++i) pts.push_back(c[i].r);
  return pts;
}

// Edge directions of the closed polygon: entry i points from vertex i to vertex i + 1.
std::vector<Vec3> edge_tangents(const FramedCurve& c) {
  std::vector<Vec3> t(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const Vec3 d = c[i + 1].r - c[i].r;
    if (d.norm() == 0.0) throw Error(ErrorCode::DegenerateTangent, "coincident samples at index " + std::to_string(i));
    t[i] = d.normalized();
  }
  return t;
}

// Smallest t0 . normalize((1 - mu) a + mu b) over mu in [0, 1] by golden section.
double blend_min(const Vec3& t0, const Vec3& a, const Vec3& b, double* mu_out) {
  auto f = [&](double mu) {
    const Vec3 v = (1.0 - mu) * a + mu * b;
    const double n = v.norm();
    return n > 0.0 ? t0.dot(v) / n : -1.0;
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = f(x2);
    }
  }
  double best_mu = 0.5 * (lo + hi), best = f(best_mu);
  for (double mu : {0.0, 1.0}) {
    if (f(mu) < best) { best = f(mu); best_mu = mu; }
  }
  if (mu_out) *mu_out = best_mu;
  return best;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

bool end_tangent_constancy(const Homotopy& h, double tol) {
  // One-sided estimates: a stencil across s = L would mix the rod end with the closure start.
  const std::size_t split = h.split_index();
  Vec3 v = Vec3::Zero();
  for (std::size_t k = 0; k < h.size(); ++k) {
    const Tantrix rod = tantrix(h.rod(k));
    const auto& x = h.slice(k).samples();
    const std::vector<Sample> tail(x.begin() + static_cast<std::ptrdiff_t>(split), x.end());
    const Tantrix closure = tantrix(FramedCurve(tail, false));
    if (k == 0) v = rod.t.front();
    for (const Vec3& t : {rod.t.front(), rod.t.back(), closure.t.back()}) {
      if ((t - v).norm() > tol) return false;
    }
  }
  return true;
}

bool straight_reference(const Homotopy& h, double tol) {
  const FramedCurve& c0 = h.front();
  const std::size_t split = h.split_index();
  const Vec3 dir = (c0[split].r - c0[0].r).normalized();
  for (std::size_t i = 0; i <= split; ++i) {
    const Vec3 off = c0[i].r - c0[0].r;
    if ((off - off.dot(dir) * dir).norm() > tol * std::max(1.0, h.L())) return false;
    if ((c0[i].d1 - c0[0].d1).norm() > tol) return false;
  }
  return true;
}

HomotopyReport validate_homotopy(const Homotopy& h, const HomotopyCheckOptions& opts, const Tolerances& tol) {
  HomotopyReport rep;
  rep.conditions.resize(6);
  for (int k = 0; k < 6; ++k) rep.conditions[static_cast<std::size_t>(k)].condition = k + 1;
  const std::size_t nk = h.size();
  const std::size_t split = h.split_index();

  // Conditions 1 and 2 per slice; orthogonality is required at every lambda.
  std::vector<ValidationReport> vals(nk);
  std::vector<double> clearance(nk, 0.0);
  parallel_for(nk, [&](std::size_t k) {
    vals[k] = validate(h.slice(k), tol);
    clearance[k] = self_clearance(h.slice(k)).distance;
  });
  rep.min_clearance = *std::min_element(clearance.begin(), clearance.end());
  {
    auto& c1 = rep.conditions[0];
    auto& c2 = rep.conditions[1];
    c1.detail = "unknottedness asserted, not checked";
    for (std::size_t k = 0; k < nk; ++k) {
      for (const auto& chk : vals[k].checks) {
        const bool frame = chk.name == "unit_director" || chk.name == "orthogonality";
        auto& cond = frame ? c2 : c1;
        if (!chk.passed && cond.status == Status::Pass) {
          cond.status = Status::Fail;
          cond.detail = chk.name + " fails at lambda = " + fmt_double(h.lambda()[k]);
          cond.at_lambda = h.lambda()[k];
          if (chk.index) cond.at_s = h.slice(k)[*chk.index].s;
          cond.worst = chk.worst;
        }
      }
    }
    if (c1.status == Status::Pass) c1.worst = rep.min_clearance;
  }

  // Condition 3: the final slice carries the rod on [0, L].
  auto match = [&](const FramedCurve& target, const FramedCurve& slice, bool with_d1, ConditionResult& cond) {
    if (target.size() != split + 1) {
      cond.status = Status::Fail;
      cond.detail = "rod grid does not match the slice grid on [0, L]";
      return;
    }
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i <= split; ++i) {
      double d = std::max((target[i].r - slice[i].r).norm(), std::abs(target[i].s - slice[i].s));
      if (with_d1) d = std::max(d, (target[i].d1 - slice[i].d1).norm());
      if (d > worst) { worst = d; at = i; }
    }
    cond.worst = worst;
    if (worst > 1e-8) {
      cond.status = Status::Fail;
      cond.at_s = slice[at].s;
      cond.detail = "slice differs from the supplied curve by " + fmt_double(worst);
    }
  };
  if (opts.rod) {
    match(*opts.rod, h.back(), true, rep.conditions[2]);
    rep.conditions[2].at_lambda = 1.0;
  } else {
    rep.conditions[2].status = Status::NotChecked;
    rep.conditions[2].detail = "no rod supplied; the final slice defines the rod";
  }

  // Condition 4: the first slice carries the reference curve and is planar.
  {
    auto& c4 = rep.conditions[3];
    if (opts.reference) {
      match(*opts.reference, h.front(), false, c4);
      c4.at_lambda = 0.0;
    }
    const PlaneFit pf = fit_plane(h.front().polygon());
    const double limit = tol.coplanar * std::max(1.0, h.M());
    if (c4.status == Status::Pass && pf.deviation > limit) {
      c4.status = Status::Fail;
      c4.detail = "reference slice is not planar (deviation " + fmt_double(pf.deviation) + ")";
      c4.worst = pf.deviation;
      c4.at_lambda = 0.0;
    } else if (c4.status == Status::Pass && !opts.reference) {
      c4.detail = "no reference supplied; the first slice is planar";
    }
  }

  // Condition 5: non-opposition against the reference tantrix, refined between slices.
  {
    std::vector<Tantrix> tx(nk);
    parallel_for(nk, [&](std::size_t k) { tx[k] = tantrix(h.slice(k)); });
    const auto& t0 = tx[0].t;
    const std::size_t ns = t0.size();
    double best = 1.0;
    std::size_t bi = 0;
    double blam = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
      for (std::size_t i = 0; i < ns; ++i) {
        const double d = t0[i].dot(tx[k].t[i]);
        if (d < best) { best = d; bi = i; blam = h.lambda()[k]; }
      }
    }
    const double refine_above = -1.0 + 10.0 * tol.nonopp;
    for (std::size_t k = 0; k + 1 < nk; ++k) {
      for (std::size_t i = 0; i < ns; ++i) {
        const Vec3& a = tx[k].t[i];
        const Vec3& b = tx[k + 1].t[i];
        if (std::min(t0[i].dot(a), t0[i].dot(b)) > refine_above) continue;
        double mu = 0.0;
        const double d = blend_min(t0[i], a, b, &mu);
        if (d < best) {
          best = d; bi = i;
          blam = h.lambda()[k] + mu * (h.lambda()[k + 1] - h.lambda()[k]);
        }
      }
    }
    rep.min_nonopposition = std::clamp(best, -1.0, 1.0);
    rep.nonopposition_s = h.front()[bi].s;
    rep.nonopposition_lambda = blam;
    auto& c5 = rep.conditions[4];
    const double margin = 1.0 + rep.min_nonopposition;
    c5.worst = rep.min_nonopposition;
    c5.at_s = rep.nonopposition_s;
    c5.at_lambda = rep.nonopposition_lambda;
    if (margin <= tol.nonopp) {
      c5.status = Status::Fail;
      c5.detail = "tangents opposed at s = " + fmt_double(c5.at_s.value()) + ", lambda = " + fmt_double(blam);
    } else if (margin <= 2.0 * tol.nonopp) {
      c5.status = Status::Indeterminate;
      c5.detail = "non-opposition margin " + fmt_double(margin) + " is within twice the tolerance";
    } else {
      c5.detail = "min t0 . t_lambda = " + fmt_double(rep.min_nonopposition);
    }
  }

  // Condition 6: planar closures at lambda = 0 and 1 in parallel planes.
  {
    auto& c6 = rep.conditions[5];
    const PlaneFit p0 = fit_plane(closure_points(h.front(), split));
    const PlaneFit p1 = fit_plane(closure_points(h.back(), split));
    const double limit = tol.coplanar * std::max(1.0, h.M());
    const double skew = p0.normal.cross(p1.normal).norm();
    c6.worst = std::max({p0.deviation, p1.deviation, skew});
    if (p0.deviation > limit || p1.deviation > limit) {
      c6.status = Status::Fail;
      c6.at_lambda = p0.deviation > limit ? 0.0 : 1.0;
      c6.detail = "closure is not planar at lambda = " + fmt_double(*c6.at_lambda);
    } else if (skew > tol.coplanar) {
      c6.status = Status::Fail;
      c6.detail = "closure planes are not parallel (|n0 x n1| = " + fmt_double(skew) + ")";
    }
  }

  rep.constant_end_tangents = end_tangent_constancy(h);
  rep.straight_reference = straight_reference(h);

  rep.ok = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const ConditionResult& c) {
    return c.status == Status::Pass || c.status == Status::NotChecked;
  });
  return rep;
}

namespace {

WritheSeries series(const Homotopy& h, const std::function<double(const FramedCurve&)>& f) {
  WritheSeries out;
  out.lambda = h.lambda();
  out.writhe.resize(h.size());
  parallel_for(h.size(), [&](std::size_t k) { out.writhe[k] = f(h.slice(k)); });
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    if (std::abs(out.writhe[k + 1] - out.writhe[k]) > 0.5) out.jumps.push_back(k);
  }
  return out;
}

}  // namespace

WritheSeries writhe_along(const Homotopy& h) {
  return series(h, [](const FramedCurve& c) { return writhe_polygonal(c.polygon()); });
}

WritheSeries link_along(const Homotopy& h) {
  return series(h, [](const FramedCurve& c) { return ribbon_link(c); });
}

OpenWritheResult open_writhe(const Homotopy& h, const Tolerances& tol) {
  OpenWritheResult out;
  const HomotopyReport rep = validate_homotopy(h, {}, tol);
  out.homotopy_valid = rep.ok;
  out.route_polygonal = writhe_polygonal(h.back());

  // The swept-area sum over the edge tantrices, restricted to the quads that touch a rod edge.
  // Quads between closure edges vanish when both closures lie in parallel planes.
  const auto e0 = edge_tangents(h.front());
  const auto e1 = edge_tangents(h.back());
  const std::size_t n = e0.size();
  const std::size_t split = h.split_index();
  Tantrix a, b;
  for (std::size_t j = 0; j <= split + 1; ++j) {
    const std::size_t i = (j + n - 1) % n;
    a.t.push_back(e0[i]);
    b.t.push_back(e1[i]);
    a.s.push_back(static_cast<double>(j));
    b.s.push_back(static_cast<double>(j));
  }
  try {
    out.route_single_integral = fuller_difference(a, b, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearOpposition) throw;
    out.note = e.what();
  }
  if (out.route_single_integral) {
    out.agree = std::abs(*out.route_single_integral - out.route_polygonal) <= tol.method;
    if (!out.agree) out.note = "routes differ by more than the method tolerance";
  }
  if (!out.homotopy_valid && out.note.empty()) out.note = "homotopy fails validation; value is route (i) only";
  return out;
}

OpenLinkResult open_link(const Homotopy& h, const Tolerances& tol) {
  OpenLinkResult out;
  const FramedCurve& c = h.back();
  out.closed_link = ribbon_link(c, &out.epsilon);
  out.closure_twist = twist(c, h.L(), h.M());
  out.link = out.closed_link - out.closure_twist;
  out.open_twist = twist(c, c.s_begin(), h.L());
  out.open_writhe = writhe_polygonal(c);
  out.residual = out.link - (out.open_twist + out.open_writhe);
  (void)tol;
  return out;
}

}  // namespace ribbonlink
