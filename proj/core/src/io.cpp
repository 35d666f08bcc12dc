#include "ribbonlink/io.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace ribbonlink {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& why) { throw Error(ErrorCode::ParseError, why); }

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) fail(std::string(what) + " must be an array of three numbers");
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (!j[static_cast<std::size_t>(k)].is_number()) fail(std::string(what) + " must be an array of three numbers");
    v[k] = j[static_cast<std::size_t>(k)].get<double>();
  }
  return v;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) fail(std::string("missing numeric field ") + key);
  return j.at(key).get<double>();
}

json samples_json(const FramedCurve& c) {
  json arr = json::array();
  for (const auto& s : c.samples()) arr.push_back({{"s", s.s}, {"r", vec(s.r)}, {"d1", vec(s.d1)}});
  return arr;
}

std::vector<Sample> samples_from(const json& arr) {
  if (!arr.is_array()) fail("samples must be an array");
  std::vector<Sample> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_object()) fail("each sample must be an object");
    out.push_back({number(e, "s"), vec_from(e.at("r"), "r"), e.contains("d1") ? vec_from(e.at("d1"), "d1") : Vec3::UnitX()});
  }
  return out;
}

json metadata_json(const Metadata& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Metadata metadata_from(const json& j) {
  Metadata m;
  if (!j.is_object()) return m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = it->is_string() ? it->get<std::string>() : it->dump();
  return m;
}

json closure_json(const ClosureSpec& c) {
  json j = {{"normal", vec(c.normal)}, {"rho", c.rho}, {"w", c.w}, {"side", c.side}, {"samples", c.samples}};
  if (c.far_offset) j["far_offset"] = *c.far_offset;
  if (c.exit_length) j["exit_length"] = *c.exit_length;
  if (c.entry_length) j["entry_length"] = *c.entry_length;
  if (c.M) j["M"] = *c.M;
  return j;
}

ClosureSpec closure_from(const json& j) {
  if (!j.is_object()) fail("closure must be an object");
  ClosureSpec c;
  if (j.contains("normal")) c.normal = vec_from(j.at("normal"), "closure normal");
  if (j.contains("rho")) c.rho = number(j, "rho");
  if (j.contains("w")) c.w = number(j, "w");
  if (j.contains("side")) c.side = static_cast<int>(number(j, "side"));
  if (j.contains("samples")) c.samples = static_cast<std::size_t>(number(j, "samples"));
  if (j.contains("far_offset")) c.far_offset = number(j, "far_offset");
  if (j.contains("exit_length")) c.exit_length = number(j, "exit_length");
  if (j.contains("entry_length")) c.entry_length = number(j, "entry_length");
  if (j.contains("M")) c.M = number(j, "M");
  return c;
}

json curve_json(const FramedCurve& c, const Metadata& metadata, const std::optional<ClosureSpec>& closure) {
  json j = {{"format_version", kFormatVersion}, {"closed", c.closed()}, {"L", c.L()}};
  if (c.M()) j["M"] = *c.M();
  j["samples"] = samples_json(c);
  j["metadata"] = metadata_json(metadata);
  if (closure) j["closure"] = closure_json(*closure);
  return j;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

void check_version(const json& j) {
  if (!j.is_object()) fail("document must be a JSON object");
  if (!j.contains("format_version") || !j.at("format_version").is_string() ||
      j.at("format_version").get<std::string>() != kFormatVersion) {
    fail(std::string("format_version must be \"") + kFormatVersion + "\"");
  }
}

CurveDocument curve_from(const json& j) {
  check_version(j);
  if (!j.contains("closed") || !j.at("closed").is_boolean()) fail("missing boolean field closed");
  if (!j.contains("samples")) fail("missing samples");
  CurveDocument doc;
  std::optional<double> L, M;
  if (j.contains("L")) L = number(j, "L");
  if (j.contains("M") && !j.at("M").is_null()) M = number(j, "M");
  try {
    doc.curve = FramedCurve(samples_from(j.at("samples")), j.at("closed").get<bool>(), L, M);
  } catch (const Error& e) {
    fail(e.what());
  }
  if (j.contains("metadata")) doc.metadata = metadata_from(j.at("metadata"));
  if (j.contains("closure")) doc.closure = closure_from(j.at("closure"));
  return doc;
}

}  // namespace

std::string write_curve(const FramedCurve& c, const Metadata& metadata, const std::optional<ClosureSpec>& closure) {
  return curve_json(c, metadata, closure).dump(1) + "\n";
}

CurveDocument read_curve(const std::string& text) { return curve_from(parse(text)); }

std::string write_curve_set(const std::vector<FramedCurve>& curves, const Metadata& metadata) {
  json j = {{"format_version", kFormatVersion}, {"curves", json::array()}, {"metadata", metadata_json(metadata)}};
  for (const auto& c : curves) j["curves"].push_back(curve_json(c, {}, {}));
  return j.dump(1) + "\n";
}

std::vector<CurveDocument> read_curve_set(const std::string& text) {
  const json j = parse(text);
  check_version(j);
  if (!j.contains("curves") || !j.at("curves").is_array()) fail("missing curves array");
  std::vector<CurveDocument> out;
  for (const auto& c : j.at("curves")) out.push_back(curve_from(c));
  return out;
}

std::string write_homotopy(const Homotopy& h, const Metadata& metadata) {
  json j = {{"format_version", kFormatVersion},
            {"L", h.L()},
            {"M", h.M()},
            {"lambda", h.lambda()},
            {"reference_tag", h.reference_tag()},
            {"slices", json::array()},
            {"metadata", metadata_json(metadata)}};
  for (const auto& c : h.slices()) j["slices"].push_back(samples_json(c));
  return j.dump(1) + "\n";
}

Homotopy read_homotopy(const std::string& text) {
  const json j = parse(text);
  check_version(j);
  const double L = number(j, "L");
  const double M = number(j, "M");
  if (!j.contains("lambda") || !j.at("lambda").is_array()) fail("missing lambda array");
  if (!j.contains("slices") || !j.at("slices").is_array()) fail("missing slices array");
  std::vector<double> lambda;
  for (const auto& l : j.at("lambda")) {
    if (!l.is_number()) fail("lambda values must be numbers");
    lambda.push_back(l.get<double>());
  }
  std::vector<FramedCurve> slices;
  try {
    for (const auto& s : j.at("slices")) slices.emplace_back(samples_from(s), true, L, M);
    const std::string tag = j.contains("reference_tag") && j.at("reference_tag").is_string()
                                ? j.at("reference_tag").get<std::string>()
                                : std::string();
    return Homotopy(std::move(lambda), std::move(slices), tag);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(e.what());
  }
}

DocumentKind detect_kind(const std::string& text) {
  const json j = parse(text);
  check_version(j);
  if (j.contains("slices")) return DocumentKind::Homotopy;
  if (j.contains("curves")) return DocumentKind::CurveSet;
  if (j.contains("samples")) return DocumentKind::Curve;
  fail("document is neither a curve, a curve set nor a homotopy");
}

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ribbonlink
