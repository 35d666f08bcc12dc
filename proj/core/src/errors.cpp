#include "ribbonlink/types.hpp"

namespace ribbonlink {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::NonOrthogonal: return "NonOrthogonal";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::IntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorCode::CurvesTooClose: return "CurvesTooClose";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::IrregularProjection: return "IrregularProjection";
    case ErrorCode::AntipodalSamples: return "AntipodalSamples";
    case ErrorCode::NearOpposition: return "NearOpposition";
    case ErrorCode::PushoffIntersects: return "PushoffIntersects";
    case ErrorCode::HomotopyInvalid: return "HomotopyInvalid";
    case ErrorCode::InfeasibleGeometry: return "InfeasibleGeometry";
    case ErrorCode::JoinTangentMismatch: return "JoinTangentMismatch";
    case ErrorCode::NotA2Class: return "NotA2Class";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::PolarSingularity: return "PolarSingularity";
    case ErrorCode::EmptyComponent: return "EmptyComponent";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace ribbonlink
