#pragma once

#include "ribbonlink/curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ribbonlink {

// Rectangular detour with circular fillets, in the plane through the rod ends with the
// given normal. The detour runs along the exit tangent, across in the direction
// side * (normal x exit tangent), back against the entry tangent and into the rod start.
struct ClosureSpec {
  Vec3 normal = Vec3::Zero();  // zero: derived from the rod's end tangents and chord
  double rho = 0.25;           // fillet radius
  double w = 0.5;              // clearance from the rod's extent in each detour direction
  int side = 1;
  std::optional<double> far_offset;   // fixed coordinate of the far run along the detour direction
  std::optional<double> exit_length;  // fixed length of the run leaving the rod end
  std::optional<double> entry_length; // fixed length of the run entering the rod start
  std::optional<double> M;            // total parameter length of the closed curve
  std::size_t samples = 0;            // closure samples; 0 matches the rod's mean spacing
  bool require_valid = true;          // reject closed curves that fail validation
};

struct Feasibility {
  bool feasible = true;
  double triple = 0.0;  // det[t(0), t(L), chord / |chord|]
  std::string diagnosis;
};

Feasibility planar_closure_feasible(const FramedCurve& rod, const Tolerances& tol = default_tolerances());

// Arclength-uniform samples (samples + 1 points, both ends included) of the polyline through
// corners with every interior corner rounded by a circular arc of radius rho.
std::vector<Vec3> fillet_polyline(const std::vector<Vec3>& corners, double rho, std::size_t samples);
double fillet_polyline_length(const std::vector<Vec3>& corners, double rho);

struct ExtensionResult {
  FramedCurve curve;
  double mismatch = 0.0;  // angle (radians) from the transported d1 at M to d1 at s = 0
};

// Replaces d1 on (L, M] by its parallel transport from s = L. The mismatch with d1(0) is
// recorded and removed by a uniform rotation about the tangent along the closure, so the
// closure's twist equals mismatch / 2 pi and vanishes when the transported frame already matches.
ExtensionResult extend_director_twistless(const FramedCurve& closed, double L, double M);

// Appends closure points (the first equals the rod end and is dropped; the last must equal the
// rod start) on a uniform parameter grid over (L, M], then extends d1 without twist.
ExtensionResult join_closure(const FramedCurve& rod, const std::vector<Vec3>& closure, std::optional<double> M = {});

struct ClosureResult {
  FramedCurve curve;
  Vec3 normal;
  double mismatch = 0.0;
  double planarity = 0.0;  // max distance of closure samples from the plane
};

ClosureResult build_planar_closure(const FramedCurve& rod, const ClosureSpec& spec,
                                   const Tolerances& tol = default_tolerances());

// Corner points of the detour that build_planar_closure would round.
std::vector<Vec3> closure_corners(const FramedCurve& rod, const ClosureSpec& spec, Vec3* normal_out = nullptr,
                                  const Tolerances& tol = default_tolerances());

}  // namespace ribbonlink
