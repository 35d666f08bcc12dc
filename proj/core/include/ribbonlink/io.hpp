#pragma once

#include "ribbonlink/closure.hpp"
#include "ribbonlink/curve.hpp"
#include "ribbonlink/homotopy.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ribbonlink {

inline constexpr const char* kFormatVersion = "1";

using Metadata = std::map<std::string, std::string>;

struct CurveDocument {
  FramedCurve curve;
  Metadata metadata;
  std::optional<ClosureSpec> closure;
};

enum class DocumentKind { Curve, CurveSet, Homotopy };

// All readers throw ParseError on malformed or schema-invalid input. Numbers are written in
// shortest round-trip form, so write then read reproduces every double exactly.
std::string write_curve(const FramedCurve& c, const Metadata& metadata = {},
                        const std::optional<ClosureSpec>& closure = {});
CurveDocument read_curve(const std::string& text);

// {"format_version", "curves": [curve, ...]} for linked pairs.
std::string write_curve_set(const std::vector<FramedCurve>& curves, const Metadata& metadata = {});
std::vector<CurveDocument> read_curve_set(const std::string& text);

std::string write_homotopy(const Homotopy& h, const Metadata& metadata = {});
Homotopy read_homotopy(const std::string& text);

DocumentKind detect_kind(const std::string& text);

// Whole file, or standard input for "-".
std::string read_text(const std::string& path);

}  // namespace ribbonlink
