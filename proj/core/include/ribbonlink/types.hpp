#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>
#include <string>

namespace ribbonlink {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  DegenerateTangent,
  NonOrthogonal,
  TooFewSamples,
  IntervalOutOfRange,
  CurvesTooClose,
  NotClosed,
  SelfIntersecting,
  IrregularProjection,
  AntipodalSamples,
  NearOpposition,
  PushoffIntersects,
  HomotopyInvalid,
  InfeasibleGeometry,
  JoinTangentMismatch,
  NotA2Class,
  GridTooCoarse,
  PolarSingularity,
  EmptyComponent,
  UnknownFamily,
  ParamOutOfRange,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default numerical tolerances shared by validation and the invariant routines.
struct Tolerances {
  double unit = 1e-9;
  double ortho = 1e-8;
  double clearance_rel = 1e-6;  // multiplied by curve length
  double seam = 1e-6;
  double nonopp = 1e-3;
  double sing = 1e-3;
  double method = 1e-3;
  double coplanar = 1e-8;
  double integer = 1e-3;  // distance of a linking number from the nearest integer
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace ribbonlink
