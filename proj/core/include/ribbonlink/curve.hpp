#pragma once

#include "ribbonlink/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ribbonlink {

struct Sample {
  double s = 0.0;
  Vec3 r = Vec3::Zero();
  Vec3 d1 = Vec3::UnitX();
};

// Sampled framed curve. Closed curves repeat the first sample at the end (s = period end),
// so a closed curve with n distinct vertices stores n + 1 samples. For an extended rod the
// rod occupies [s_0, L] and the closure (L, M].
class FramedCurve {
 public:
  FramedCurve() = default;
  FramedCurve(std::vector<Sample> samples, bool closed, std::optional<double> L = {},
              std::optional<double> M = {});

  const std::vector<Sample>& samples() const { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  bool closed() const { return closed_; }
  double L() const { return L_; }
  std::optional<double> M() const { return M_; }
  double s_begin() const { return samples_.front().s; }
  double s_end() const { return samples_.back().s; }

  // Distinct vertices: size() - 1 for closed curves, size() otherwise.
  std::size_t vertex_count() const { return closed_ ? samples_.size() - 1 : samples_.size(); }
  // Index of the sample at s == L, if any.
  std::optional<std::size_t> index_of(double s, double tol = 1e-12) const;

  std::vector<Vec3> points() const;    // every stored sample
  std::vector<Vec3> polygon() const;   // distinct vertices only
  std::vector<double> params() const;
  double polyline_length() const;

 private:
  std::vector<Sample> samples_;
  bool closed_ = false;
  double L_ = 0.0;
  std::optional<double> M_;
};

struct DirectorFrame {
  std::vector<Vec3> d1, d2, d3;
};

struct Tantrix {
  std::vector<double> s;
  std::vector<Vec3> t;
  bool closed = false;  // closed tantrices repeat the first point at the end
};

// Derivatives dr/ds of the C1 piecewise-cubic interpolant at the sample nodes
// (three-point non-uniform differences; periodic for closed curves, one-sided at open ends).
std::vector<Vec3> node_derivatives(const FramedCurve& c);

// Unit tangent at every sample. Throws DegenerateTangent on coincident samples.
Tantrix tantrix(const FramedCurve& c);

// Orthonormal director frame with d1 projected onto the normal plane of the discrete tangent.
DirectorFrame build_frame(const FramedCurve& c, const Tolerances& tol = default_tolerances());

// Copy of c with d1 replaced by its normalized projection onto the discrete normal plane.
FramedCurve with_projected_directors(const FramedCurve& c);

struct Check {
  std::string name;
  bool passed = true;
  double worst = 0.0;
  std::optional<std::size_t> index;
  std::optional<std::size_t> other_index;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Check> checks;
  const Check* find(const std::string& name) const;
};

// Never throws on content failures.
ValidationReport validate(const FramedCurve& c, const Tolerances& tol = default_tolerances());

struct ClearanceResult {
  double distance;
  std::size_t i;  // segment indices
  std::size_t j;
};

// Minimum distance between non-adjacent polyline segments of c.
ClearanceResult self_clearance(const FramedCurve& c);

// Arclength-uniform resampling to n samples (n distinct vertices for closed curves).
FramedCurve resample(const FramedCurve& c, std::size_t n);

// Point and derivative of the cubic Hermite interpolant at parameter s.
Vec3 interpolate_position(const FramedCurve& c, const std::vector<Vec3>& derivs, double s);

}  // namespace ribbonlink
