#include "ribbonlink/closure.hpp"
#include "ribbonlink/euler.hpp"
#include "ribbonlink/figures.hpp"
#include "ribbonlink/generators.hpp"
#include "ribbonlink/homotopy.hpp"
#include "ribbonlink/invariants.hpp"
#include "ribbonlink/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace rl = ribbonlink;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kValidationFailure = 1, kComputationError = 2, kUsageError = 3;

// Usage problems raised after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  ojson json;
  // CSV: column names and rows. Empty columns means "flatten the scalar JSON fields".
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
  std::string raw_csv;  // used verbatim when set
  int exit_code = kOk;
};

std::string csv_cell(const ojson& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::string to_csv(const Output& out) {
  if (!out.raw_csv.empty()) return out.raw_csv;
  std::ostringstream os;
  auto line = [&](const std::vector<ojson>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << "\n";
  };
  if (out.columns.empty()) {
    std::vector<ojson> head, row;
    for (const auto& [k, v] : out.json.items()) {
      if (v.is_structured()) continue;
      head.emplace_back(k);
      row.push_back(v);
    }
    line(head);
    line(row);
  } else {
    std::vector<ojson> head(out.columns.begin(), out.columns.end());
    line(head);
    for (const auto& r : out.rows) line(r);
  }
  return os.str();
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson vec_json(const rl::Vec3& v) { return ojson::array({v.x(), v.y(), v.z()}); }

ojson report_json(const rl::InvariantReport& r) {
  ojson j;
  j["quantity"] = rl::to_string(r.quantity);
  j["value"] = r.value + 0.0;  // no negative zero
  j["method"] = rl::to_string(r.method);
  j["residual"] = opt_json(r.residual);
  j["stderr"] = opt_json(r.stderr_estimate);
  j["error_bound"] = opt_json(r.error_bound);
  j["n_samples"] = r.n_samples;
  j["n_directions"] = r.n_directions;
  j["n_rejected"] = r.n_rejected;
  j["seed"] = r.seed ? ojson(*r.seed) : ojson(nullptr);
  return j;
}

// Input document: a curve, a set of curves, or a homotopy.
struct Input {
  rl::DocumentKind kind;
  std::vector<rl::CurveDocument> curves;
  std::optional<rl::Homotopy> homotopy;
};

Input load(const std::string& path) {
  const std::string text = rl::read_text(path);
  Input in{rl::detect_kind(text), {}, {}};
  switch (in.kind) {
    case rl::DocumentKind::Curve: in.curves.push_back(rl::read_curve(text)); break;
    case rl::DocumentKind::CurveSet: in.curves = rl::read_curve_set(text); break;
    case rl::DocumentKind::Homotopy: in.homotopy = rl::read_homotopy(text); break;
  }
  return in;
}

const rl::CurveDocument& single_curve(const Input& in, const char* what) {
  if (in.kind != rl::DocumentKind::Curve) throw UsageError(std::string(what) + " needs a curve file");
  return in.curves.front();
}

const rl::Homotopy& need_homotopy(const Input& in, const char* what) {
  if (!in.homotopy) throw UsageError(std::string(what) + " needs a homotopy file");
  return *in.homotopy;
}

const char* kind_name(rl::DocumentKind k) {
  switch (k) {
    case rl::DocumentKind::Curve: return "curve";
    case rl::DocumentKind::CurveSet: return "curve_set";
    case rl::DocumentKind::Homotopy: return "homotopy";
  }
  return "";
}

Output cmd_validate(const std::string& path) {
  const Input in = load(path);
  std::vector<const rl::FramedCurve*> curves;
  for (const auto& d : in.curves) curves.push_back(&d.curve);
  if (in.homotopy) {
    for (const auto& s : in.homotopy->slices()) curves.push_back(&s);
  }
  Output out;
  out.columns = {"curve", "check", "passed", "worst", "index", "other_index"};
  bool ok = true;
  ojson list = ojson::array();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto rep = rl::validate(*curves[k]);
    ok = ok && rep.ok;
    ojson checks = ojson::array();
    for (const auto& c : rep.checks) {
      const ojson idx = c.index ? ojson(*c.index) : ojson(nullptr), other = c.other_index ? ojson(*c.other_index) : ojson(nullptr);
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"index", idx}, {"other_index", other}});
      out.rows.push_back({k, c.name, c.passed, c.worst, idx, other});
    }
    list.push_back({{"ok", rep.ok}, {"checks", checks}});
  }
  out.json = {{"kind", kind_name(in.kind)}, {"ok", ok}, {"curves", list}};
  out.exit_code = ok ? kOk : kValidationFailure;
  return out;
}

Output cmd_twist(const std::string& path) {
  const Input in = load(path);
  const auto& doc = single_curve(in, "twist");
  const auto& c = doc.curve;
  Output out;
  const bool closed = c.closed();
  const double tw = closed ? rl::twist(c) : rl::open_twist(c);
  out.json = {{"quantity", closed ? "Twist" : "OpenTwist"}, {"value", tw}, {"closed", closed}, {"n_samples", c.size()}};
  return out;
}

Output cmd_writhe(const std::string& path, const std::string& method, std::size_t directions, std::uint64_t seed) {
  const Input in = load(path);
  const auto& c = single_curve(in, "writhe").curve;
  if (!c.closed()) throw UsageError("writhe needs a closed curve; use open-writhe for rods");
  Output out;
  if (method == "poly") {
    rl::InvariantReport r;
    r.value = rl::writhe_polygonal(c);
    r.n_samples = c.vertex_count();
    out.json = report_json(r);
  } else if (method == "quad") {
    out.json = report_json(rl::writhe_quadrature(c));
  } else {
    out.json = report_json(rl::writhe_projection_average(c, directions, seed));
  }
  return out;
}

rl::Vec3 parse_direction(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 3) throw UsageError("--direction takes x,y,z");
  const rl::Vec3 d(v[0], v[1], v[2]);
  if (d.norm() < 1e-12) throw UsageError("--direction must be non-zero");
  return d.normalized();
}

Output cmd_link(const std::string& path, const std::string& method, const std::string& direction) {
  const Input in = load(path);
  std::vector<rl::Vec3> a, b;
  std::optional<double> eps;
  if (in.kind == rl::DocumentKind::CurveSet) {
    if (in.curves.size() != 2) throw UsageError("link needs exactly two curves");
    a = in.curves[0].curve.polygon();
    b = in.curves[1].curve.polygon();
    if (!in.curves[0].curve.closed() || !in.curves[1].curve.closed()) throw UsageError("link needs closed curves");
  } else {
    const auto& c = single_curve(in, "link").curve;
    if (!c.closed()) throw UsageError("link of a single curve needs a closed ribbon");
    double e = 0.0;
    rl::ribbon_link(c, &e);
    eps = e;
    a = c.polygon();
    b = rl::pushoff(c, e);
  }
  Output out;
  if (method == "gauss") {
    rl::InvariantReport r;
    r.quantity = rl::Quantity::Link;
    // Curve sets go through the curve overload, which rejects curves that touch.
    r.value = in.kind == rl::DocumentKind::CurveSet ? rl::gauss_link(in.curves[0].curve, in.curves[1].curve)
                                                    : rl::gauss_link(a, b);
    r.n_samples = a.size() + b.size();
    out.json = report_json(r);
  } else {
    const rl::Vec3 p = direction.empty() ? rl::Vec3(0.3, 0.5, 0.8124).normalized() : parse_direction(direction);
    rl::InvariantReport r;
    r.quantity = rl::Quantity::Link;
    r.method = rl::Method::CrossingCount;
    r.value = rl::linking_by_crossings(a, b, p);
    r.n_samples = a.size() + b.size();
    out.json = report_json(r);
    out.json["direction"] = vec_json(p);
  }
  out.json["pushoff_epsilon"] = opt_json(eps);
  return out;
}

Output cmd_open_writhe(const std::string& path) {
  const Input in = load(path);
  const auto& h = need_homotopy(in, "open-writhe");
  const auto r = rl::open_writhe(h);
  Output out;
  out.json = {{"quantity", "OpenWrithe"},
              {"value", r.route_polygonal},
              {"route_polygonal", r.route_polygonal},
              {"route_single_integral", opt_json(r.route_single_integral)},
              {"agree", r.agree},
              {"homotopy_valid", r.homotopy_valid},
              {"note", r.note}};
  return out;
}

Output cmd_open_link(const std::string& path) {
  const Input in = load(path);
  const auto& h = need_homotopy(in, "open-link");
  const auto r = rl::open_link(h);
  Output out;
  out.json = {{"quantity", "OpenLink"},    {"value", r.link},         {"closed_link", r.closed_link},
              {"closure_twist", r.closure_twist}, {"open_twist", r.open_twist}, {"open_writhe", r.open_writhe},
              {"residual", r.residual},    {"epsilon", r.epsilon},    {"end_rotation", rl::kTwoPi * r.link}};
  return out;
}

Output cmd_end_rotation(const std::string& path, const std::string& method, const std::string& axis) {
  const Input in = load(path);
  const rl::Vec3 e3 = axis.empty() ? rl::Vec3::UnitZ() : parse_direction(axis);
  Output out;
  double value = 0.0;
  if (method == "homotopy") {
    value = rl::end_rotation_homotopy(need_homotopy(in, "end-rotation --method homotopy"));
  } else {
    const rl::FramedCurve rod = in.homotopy ? in.homotopy->rod(in.homotopy->size() - 1) : single_curve(in, "end-rotation").curve;
    value = rl::end_rotation_euler(rod, e3);
  }
  out.json = {{"quantity", "EndRotation"},
              {"value", value},
              {"turns", value / rl::kTwoPi},
              {"method", method == "homotopy" ? "Homotopy" : rl::to_string(rl::Method::EulerAngles)},
              {"axis", vec_json(e3)}};
  return out;
}

Output cmd_check_cwf(const std::string& path) {
  const Input in = load(path);
  const auto& c = single_curve(in, "check-cwf").curve;
  if (!c.closed()) throw UsageError("check-cwf needs a closed ribbon");
  const auto r = rl::check_cwf(c);
  Output out;
  out.json = {{"link", r.link},         {"twist", r.twist},     {"writhe", r.writhe},
              {"residual", r.residual}, {"epsilon", r.epsilon}, {"n_samples", r.n_samples}};
  return out;
}

Output cmd_check_homotopy(const std::string& path, const std::string& rod_path, const std::string& ref_path) {
  const Input in = load(path);
  const auto& h = need_homotopy(in, "check-homotopy");
  std::optional<rl::FramedCurve> rod, ref;
  rl::HomotopyCheckOptions opts;
  if (!rod_path.empty()) {
    rod = rl::read_curve(rl::read_text(rod_path)).curve;
    opts.rod = &*rod;
  }
  if (!ref_path.empty()) {
    ref = rl::read_curve(rl::read_text(ref_path)).curve;
    opts.reference = &*ref;
  }
  const auto rep = rl::validate_homotopy(h, opts);
  Output out;
  out.columns = {"condition", "status", "worst", "s", "lambda", "detail"};
  ojson conds = ojson::array();
  for (const auto& c : rep.conditions) {
    conds.push_back({{"condition", c.condition},
                     {"status", rl::to_string(c.status)},
                     {"worst", c.worst},
                     {"s", opt_json(c.at_s)},
                     {"lambda", opt_json(c.at_lambda)},
                     {"detail", c.detail}});
    out.rows.push_back({c.condition, rl::to_string(c.status), c.worst, opt_json(c.at_s), opt_json(c.at_lambda), c.detail});
  }
  out.json = {{"ok", rep.ok},
              {"min_nonopposition", rep.min_nonopposition},
              {"nonopposition_s", rep.nonopposition_s},
              {"nonopposition_lambda", rep.nonopposition_lambda},
              {"min_clearance", rep.min_clearance},
              {"constant_end_tangents", rep.constant_end_tangents},
              {"straight_reference", rep.straight_reference},
              {"conditions", conds}};
  out.exit_code = rep.ok ? kOk : kValidationFailure;
  return out;
}

Output cmd_scan_v(const std::string& path, int level, double band) {
  const Input in = load(path);
  const rl::FramedCurve rod = in.homotopy ? in.homotopy->rod(in.homotopy->size() - 1) : single_curve(in, "scan-v").curve;
  const auto scan = rl::scan_v(rl::tantrix(rod), level, band);
  Output out;
  ojson comps = ojson::array();
  for (const auto& c : scan.components) {
    comps.push_back({{"id", c.id}, {"count", c.count}, {"mean", c.mean}, {"max_deviation", c.max_deviation}});
  }
  out.json = {{"directions", scan.v.size()},
              {"band_radius", scan.band_radius},
              {"max_deviation", scan.max_deviation()},
              {"components", comps}};
  out.raw_csv = rl::scan_csv(scan);
  return out;
}

// --- generate -----------------------------------------------------------------------------

using Params = std::map<std::string, std::string>;

struct ParamReader {
  Params p;
  std::vector<std::string> used;

  std::string str(const std::string& k, const std::string& def) {
    used.push_back(k);
    auto it = p.find(k);
    return it == p.end() ? def : it->second;
  }
  double num(const std::string& k, double def) {
    used.push_back(k);
    auto it = p.find(k);
    if (it == p.end()) return def;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw rl::Error(rl::ErrorCode::ParamOutOfRange, "parameter " + k + " is not a number");
    }
  }
  long integer(const std::string& k, long def) {
    const double v = num(k, static_cast<double>(def));
    if (v != std::floor(v)) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "parameter " + k + " must be an integer");
    return static_cast<long>(v);
  }
  std::size_t count(const std::string& k, long def, long min) {
    const long v = integer(k, def);
    if (v < min) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "parameter " + k + " must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }
  void finish() const {
    for (const auto& [k, v] : p) {
      if (std::find(used.begin(), used.end(), k) == used.end()) {
        throw rl::Error(rl::ErrorCode::ParamOutOfRange, "unknown parameter " + k);
      }
    }
  }
};

char single_char(const std::string& s, const char* what) {
  if (s.size() != 1) throw rl::Error(rl::ErrorCode::ParamOutOfRange, std::string(what) + " must be one letter");
  return s[0];
}

std::string generate(const std::string& family, const Params& params, std::uint64_t seed) {
  ParamReader r{params, {}};
  rl::Metadata meta{{"family", family}};
  for (const auto& [k, v] : params) meta["param." + k] = v;
  std::string text;
  if (family == "circle") {
    const double radius = r.num("radius", 1.0);
    if (!(radius > 0.0)) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "radius must be positive");
    const auto n = r.count("n", 256, 8);
    const auto turns = r.integer("turns", 0);
    r.finish();
    text = rl::write_curve(rl::circle(radius, n, static_cast<int>(turns)), meta);
  } else if (family == "helix") {
    const double R = r.num("R", 2.0), a = r.num("a", 0.5);
    const auto q = r.integer("q", 5);
    const auto n = r.count("n", 1024, 16);
    r.finish();
    if (!(R > 0.0 && a > 0.0 && a < R) || q < 1) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "helix needs 0 < a < R and q >= 1");
    text = rl::write_curve(rl::closed_helix(R, a, static_cast<int>(q), n), meta);
  } else if (family == "open-helix") {
    const double radius = r.num("radius", 1.0), rise = r.num("rise", 1.0), turns = r.num("turns", 3.0);
    const auto n = r.count("n", 512, 8);
    r.finish();
    if (!(radius > 0.0 && turns > 0.0)) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "open helix needs radius > 0 and turns > 0");
    text = rl::write_curve(rl::open_helix(radius, rise, turns, n), meta);
  } else if (family == "twisted-line") {
    const double length = r.num("length", 10.0), turns = r.num("turns", 1.0);
    const auto n = r.count("n", 256, 2);
    r.finish();
    if (!(length > 0.0)) throw rl::Error(rl::ErrorCode::ParamOutOfRange, "length must be positive");
    text = rl::write_curve(rl::twisted_line(length, turns, n), meta);
  } else if (family == "trefoil" || family == "figure-eight") {
    const auto n = r.count("n", 1024, 32);
    r.finish();
    text = rl::write_curve(family == "trefoil" ? rl::trefoil(n) : rl::figure_eight(n), meta);
  } else if (family == "hopf" || family == "double-hopf" || family == "unlinked") {
    const auto n = r.count("n", 256, 8);
    r.finish();
    const auto pair = family == "hopf" ? rl::hopf_pair(n) : family == "double-hopf" ? rl::double_hopf_pair(n) : rl::unlinked_pair(n);
    text = rl::write_curve_set({pair.first, pair.second}, meta);
  } else if (family == "fig1") {
    rl::Fig1Options o;
    o.theta_deg = r.num("theta", o.theta_deg);
    o.samples_per_unit = r.num("density", o.samples_per_unit);
    o.slices = r.count("slices", static_cast<long>(o.slices), 2);
    const std::string stage = r.str("stage", "c"), path = r.str("path", "");
    r.finish();
    if (path.empty()) {
      text = rl::write_curve(rl::fig1_rod(single_char(stage, "stage"), o), meta, rl::fig1_closure());
    } else if (path == "looping") {
      text = rl::write_homotopy(rl::fig1_looping_path(o), meta);
    } else {
      text = rl::write_homotopy(rl::fig1_homotopy(path, o), meta);
    }
  } else if (family == "fig3") {
    rl::Fig3Options o;
    o.n = static_cast<int>(r.integer("n", o.n));
    o.samples_per_unit = r.num("density", o.samples_per_unit);
    o.slices = r.count("slices", static_cast<long>(o.slices), 2);
    const char v = single_char(r.str("variant", "b"), "variant");
    r.finish();
    text = rl::write_homotopy(rl::fig3_homotopy(v, o), meta);
  } else if (family == "fig4") {
    rl::Fig4Options o;
    o.samples_per_unit = r.num("density", o.samples_per_unit);
    o.slices = r.count("slices", static_cast<long>(o.slices), 2);
    const char v = single_char(r.str("variant", "a"), "variant");
    r.finish();
    text = rl::write_homotopy(rl::fig4_homotopy(v, o), meta);
  } else if (family == "random-a2") {
    rl::RandomA2Options o;
    o.length = r.num("length", o.length);
    o.samples_per_unit = r.num("density", o.samples_per_unit);
    o.slices = r.count("slices", static_cast<long>(o.slices), 2);
    o.max_theta = r.num("max_theta", o.max_theta);
    const std::string sched = r.str("schedule", "joint");
    if (params.count("rho")) o.closure_rho = r.num("rho", 0.0);
    if (params.count("w")) o.closure_w = r.num("w", 0.0);
    r.finish();
    if (sched == "joint") o.schedule = rl::RandomSchedule::Joint;
    else if (sched == "twist-first") o.schedule = rl::RandomSchedule::TwistFirst;
    else if (sched == "bend-first") o.schedule = rl::RandomSchedule::BendFirst;
    else throw rl::Error(rl::ErrorCode::ParamOutOfRange, "schedule must be joint, twist-first or bend-first");
    meta["seed"] = std::to_string(seed);
    text = rl::write_homotopy(rl::random_a2_homotopy(seed, o), meta);
  } else {
    throw rl::Error(rl::ErrorCode::UnknownFamily, "unknown family " + family);
  }
  return text;
}

const char* kCsvHelp = R"(CSV output (--csv):
  validate        curve,check,passed,worst,index,other_index
  check-homotopy  condition,status,worst,s,lambda,detail
  scan-v          v_x,v_y,v_z,f,component_id,in_band
  others          one header row of the scalar result fields, then one value row
Families for generate (-p key=value):
  circle radius,n,turns | helix R,a,q,n | open-helix radius,rise,turns,n
  twisted-line length,turns,n | trefoil n | figure-eight n | hopf n | double-hopf n | unlinked n
  fig1 stage=a|b|c or path=ab|bc|ac|looping, theta,density,slices
  fig3 variant=a|b|c|d, n,density,slices | fig4 variant=a|b, density,slices
  random-a2 length,density,slices,max_theta,rho,w,schedule=joint|twist-first|bend-first (uses --seed)
Exit codes: 0 success, 1 validation failure, 2 computation error, 3 usage error.
RIBBONLINK_THREADS caps the worker threads.)";

int exit_for(const rl::Error& e) {
  switch (e.code()) {
    case rl::ErrorCode::UnknownFamily:
    case rl::ErrorCode::ParamOutOfRange:
    case rl::ErrorCode::ParseError: return kUsageError;
    default: return kComputationError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link, twist and writhe of framed curves and open rods"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  app.fallthrough();
  bool csv = false;
  std::uint64_t seed = 0;
  app.add_flag("--csv", csv, "Write CSV instead of JSON");
  app.add_option("--seed", seed, "Seed for random directions and random families")->capture_default_str();

  std::string input = "-";
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input file, or - for stdin")->capture_default_str(); };

  auto* validate = app.add_subcommand("validate", "Validate a curve, curve set or every homotopy slice");
  add_input(validate);
  auto* twist = app.add_subcommand("twist", "Twist of a closed ribbon or open rod (turns)");
  add_input(twist);

  std::string writhe_method = "poly";
  std::size_t directions = 4096;
  auto* writhe = app.add_subcommand("writhe", "Writhe of a closed curve (turns)");
  writhe->add_option("--method", writhe_method, "quad, poly or proj")->check(CLI::IsMember({"quad", "poly", "proj"}))->capture_default_str();
  writhe->add_option("--directions", directions, "Directions for --method proj")->check(CLI::Range(1, 100000000))->capture_default_str();
  add_input(writhe);

  std::string link_method = "gauss", direction;
  auto* link = app.add_subcommand("link", "Linking number of two curves, or of a ribbon with its push-off");
  link->add_option("--method", link_method, "gauss or cross")->check(CLI::IsMember({"gauss", "cross"}))->capture_default_str();
  link->add_option("--direction", direction, "Projection direction x,y,z for --method cross");
  add_input(link);

  auto* open_writhe = app.add_subcommand("open-writhe", "Open writhe of the final rod of a homotopy (turns)");
  add_input(open_writhe);
  auto* open_link = app.add_subcommand("open-link", "Open link of the final rod of a homotopy (turns)");
  add_input(open_link);

  std::string rot_method = "homotopy", axis;
  auto* end_rotation = app.add_subcommand("end-rotation", "End rotation of a class A2 rod (radians)");
  end_rotation->add_option("--method", rot_method, "homotopy or euler")->check(CLI::IsMember({"homotopy", "euler"}))->capture_default_str();
  end_rotation->add_option("--axis", axis, "Euler axis x,y,z (default 0,0,1)");
  add_input(end_rotation);

  auto* check_cwf = app.add_subcommand("check-cwf", "Lk - Tw - Wr for a closed ribbon");
  add_input(check_cwf);

  std::string rod_path, ref_path;
  auto* check_homotopy = app.add_subcommand("check-homotopy", "Check the six homotopy conditions");
  check_homotopy->add_option("--rod", rod_path, "Curve file the final slice must match on [0, L]");
  check_homotopy->add_option("--reference", ref_path, "Curve file the first slice must match on [0, L]");
  add_input(check_homotopy);

  int level = 5;
  double band = 2.0;
  auto* scan = app.add_subcommand("scan-v", "Open writhe relative to every icosphere direction");
  scan->add_option("--level", level, "Icosphere subdivision level")->check(CLI::Range(0, 7))->capture_default_str();
  scan->add_option("--band", band, "Excluded band around -t (degrees)")->check(CLI::PositiveNumber)->capture_default_str();
  add_input(scan);

  std::string family, out_path;
  std::vector<std::string> param_list;
  auto* gen = app.add_subcommand("generate", "Write a generated curve or homotopy");
  gen->add_option("family", family, "Family name")->required();
  gen->add_option("-p,--param", param_list, "key=value parameter (repeatable)");
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (gen->parsed()) {
      Params params;
      for (const auto& kv : param_list) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter must be key=value: " + kv);
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      const std::string text = generate(family, params, seed);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << text)) throw std::runtime_error("cannot write " + out_path);
      }
      return kOk;
    }
    Output out;
    if (validate->parsed()) out = cmd_validate(input);
    else if (twist->parsed()) out = cmd_twist(input);
    else if (writhe->parsed()) out = cmd_writhe(input, writhe_method, directions, seed);
    else if (link->parsed()) out = cmd_link(input, link_method, direction);
    else if (open_writhe->parsed()) out = cmd_open_writhe(input);
    else if (open_link->parsed()) out = cmd_open_link(input);
    else if (end_rotation->parsed()) out = cmd_end_rotation(input, rot_method, axis);
    else if (check_cwf->parsed()) out = cmd_check_cwf(input);
    else if (check_homotopy->parsed()) out = cmd_check_homotopy(input, rod_path, ref_path);
    else if (scan->parsed()) out = cmd_scan_v(input, level, band);
    std::cout << (csv ? to_csv(out) : out.json.dump(2) + "\n");
    return out.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const rl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputationError;
  }
}
