#pragma once

#include "ribbonlink/closure.hpp"
#include "ribbonlink/curve.hpp"
#include "ribbonlink/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ribbonlink {

// One closed framed curve per lambda value, all on a common parameter grid over [0, M],
// with the rod on [0, L] and the closure on (L, M].
class Homotopy {
 public:
  Homotopy(std::vector<double> lambda, std::vector<FramedCurve> slices, std::string reference_tag = "");

  const std::vector<double>& lambda() const { return lambda_; }
  const std::vector<FramedCurve>& slices() const { return slices_; }
  const FramedCurve& slice(std::size_t k) const { return slices_[k]; }
  const FramedCurve& front() const { return slices_.front(); }
  const FramedCurve& back() const { return slices_.back(); }
  std::size_t size() const { return slices_.size(); }
  double L() const { return L_; }
  double M() const { return M_; }
  std::size_t split_index() const { return split_; }
  const std::string& reference_tag() const { return tag_; }

  // The open rod [0, L] of slice k.
  FramedCurve rod(std::size_t k) const;

 private:
  std::vector<double> lambda_;
  std::vector<FramedCurve> slices_;
  double L_ = 0.0, M_ = 0.0;
  std::size_t split_ = 0;
  std::string tag_;
};

// Closes every rod with the same detour plane and shape parameters. Unset far offset, run
// lengths, M and sample count are fixed from the whole family so the slices share one grid.
Homotopy close_family(const std::vector<double>& lambda, const std::vector<FramedCurve>& rods, ClosureSpec spec,
                      std::string reference_tag = "", const Tolerances& tol = default_tolerances());

enum class Status { Pass, Fail, Indeterminate, NotChecked };
const char* to_string(Status s) noexcept;

struct ConditionResult {
  int condition = 0;
  Status status = Status::Pass;
  std::string detail;
  double worst = 0.0;
  std::optional<double> at_s;
  std::optional<double> at_lambda;
};

struct HomotopyReport {
  std::vector<ConditionResult> conditions;  // Definition 2.2 conditions 1-6
  bool ok = true;                           // every checked condition passes
  double min_nonopposition = 1.0;           // min over (s, lambda) of t_0(s) . t_lambda(s)
  double nonopposition_s = 0.0;
  double nonopposition_lambda = 0.0;
  double min_clearance = 0.0;               // min over lambda of slice self-clearance
  bool constant_end_tangents = false;       // class A2: t(0) = t(L) = t(M) = v for all lambda
  bool straight_reference = false;          // class A2: reference rod straight with constant d1
  const ConditionResult& condition(int k) const { return conditions.at(static_cast<std::size_t>(k - 1)); }
};

struct HomotopyCheckOptions {
  const FramedCurve* rod = nullptr;        // condition 3: final slice matches this rod on [0, L]
  const FramedCurve* reference = nullptr;  // condition 4: first slice matches this rod on [0, L]
};

HomotopyReport validate_homotopy(const Homotopy& h, const HomotopyCheckOptions& opts = {},
                                 const Tolerances& tol = default_tolerances());

struct WritheSeries {
  std::vector<double> lambda;
  std::vector<double> writhe;
  std::vector<std::size_t> jumps;  // k such that |Wr(k+1) - Wr(k)| > 0.5
};

WritheSeries writhe_along(const Homotopy& h);

// Linking number of each slice with its push-off, with the same jump flagging.
WritheSeries link_along(const Homotopy& h);

// End tangents t(0), t(L) and t(M) equal t(0) of the first slice for every slice. Each is a
// one-sided estimate from its own side of the join, compared at the join tolerance.
bool end_tangent_constancy(const Homotopy& h, double tol = default_tolerances().seam);

// Reference rod (slice 0 on [0, L]) straight with constant d1.
bool straight_reference(const Homotopy& h, double tol = 1e-8);

struct OpenWritheResult {
  double route_polygonal = 0.0;               // writhe of the closed final slice
  std::optional<double> route_single_integral;  // Fuller difference over the rod, if defined
  bool agree = false;
  bool homotopy_valid = false;
  std::string note;
};

OpenWritheResult open_writhe(const Homotopy& h, const Tolerances& tol = default_tolerances());

struct OpenLinkResult {
  double link = 0.0;             // Lk of the closed final ribbon minus the closure twist
  double closed_link = 0.0;      // raw Lk(r, r + eps d1)
  double closure_twist = 0.0;
  double open_twist = 0.0;
  double open_writhe = 0.0;
  double residual = 0.0;         // Lk - (Tw + Wr)
  double epsilon = 0.0;
};

OpenLinkResult open_link(const Homotopy& h, const Tolerances& tol = default_tolerances());

// Unit normal of the best-fit plane through the points and the largest distance from it.
struct PlaneFit {
  Vec3 normal;
  Vec3 centroid;
  double deviation;
};
PlaneFit fit_plane(const std::vector<Vec3>& pts);

}  // namespace ribbonlink
