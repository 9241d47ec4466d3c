#include "slicereg/serialization.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slicereg {

namespace {

using nlohmann::json;

[[noreturn]] void spec_error(const std::string& field, const std::string& what) {
  throw std::runtime_error("function spec field \"" + field + "\": " + what);
}

Quaternion parse_quaternion(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4)
    spec_error(field, "expected an array [w, x, y, z] of four numbers");
  for (const auto& v : j)
    if (!v.is_number()) spec_error(field, "expected numeric components");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

QuatPoly parse_poly(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("coeffs"))
    spec_error(field, "expected an object with a \"coeffs\" array");
  const json& c = j["coeffs"];
  if (!c.is_array()) spec_error(field + ".coeffs", "expected an array");
  std::vector<Quaternion> coeffs;
  coeffs.reserve(c.size());
  for (std::size_t n = 0; n < c.size(); ++n)
    coeffs.push_back(parse_quaternion(c[n], field + ".coeffs[" + std::to_string(n) + "]"));
  return QuatPoly(std::move(coeffs));
}

CircularDomain parse_domain(const json& j) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
    spec_error("domain", "expected {\"alpha\": [a0,a1], \"beta\": [b0,b1]}");
  const json& a = j["alpha"];
  const json& b = j["beta"];
  if (!a.is_array() || a.size() != 2 || !b.is_array() || b.size() != 2)
    spec_error("domain", "alpha and beta must be two-element arrays");
  try {
    return CircularDomain(a[0].get<double>(), a[1].get<double>(), b[0].get<double>(),
                          b[1].get<double>());
  } catch (const std::invalid_argument& e) {
    spec_error("domain", e.what());
  }
}

ImaginaryUnit parse_unit(const json& j, const std::string& field) {
  const Quaternion q = parse_quaternion(j, field);
  try {
    return ImaginaryUnit(q);
  } catch (const std::invalid_argument& e) {
    spec_error(field, e.what());
  }
}

// %.17g is enough to reproduce any double exactly and keeps exports
// byte-stable across runs.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json quat_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

const char* kind_name(const SurfacePoint& p) {
  if (p.z.imag() == 0.0) return "real";
  return p.whole_sphere ? "spherical" : "isolated";
}

const char* kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::real_zero: return "real";
    case ZeroKind::spherical: return "spherical";
    case ZeroKind::s_isolated: return "isolated";
    case ZeroKind::surface_member: return "surface";
  }
  return "unknown";
}

json grid_json(const GridSpec& g) {
  return json{{"alpha_steps", g.alpha_steps},
              {"beta_steps", g.beta_steps},
              {"theta_steps", g.theta_steps},
              {"phi_steps", g.phi_steps},
              {"tol", g.tol}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

SliceFunction parse_function_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("function spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type"))
    spec_error("type", "missing; expected \"polynomial\" or \"twoslice\"");
  if (!j.contains("domain")) spec_error("domain", "missing");
  const CircularDomain dom = parse_domain(j["domain"]);
  const std::string type = j["type"].get<std::string>();
  if (type == "polynomial") {
    if (!j.contains("coeffs")) spec_error("coeffs", "missing");
    QuatPoly p = parse_poly(json{{"coeffs", j["coeffs"]}}, "");
    return SliceFunction::polynomial(std::move(p), dom);
  }
  if (type == "twoslice") {
    for (const char* field : {"J", "K", "gJ", "gK"})
      if (!j.contains(field)) spec_error(field, "missing");
    const ImaginaryUnit J = parse_unit(j["J"], "J");
    const ImaginaryUnit K = parse_unit(j["K"], "K");
    const QuatPoly gj = parse_poly(j["gJ"], "gJ");
    const QuatPoly gk = parse_poly(j["gK"], "gK");
    try {
      return SliceFunction(StemFunction::two_slice(J, gj, K, gk), dom);
    } catch (const std::invalid_argument& e) {
      spec_error("J/K", e.what());
    }
  }
  spec_error("type", "unknown type \"" + type + "\"");
}

SliceFunction load_function_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open function spec: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_function_spec(ss.str());
}

std::string function_spec_to_json(const SliceFunction& f) {
  json j;
  j["domain"] = {{"alpha", {f.domain().alpha_lo(), f.domain().alpha_hi()}},
                 {"beta", {f.domain().beta_lo(), f.domain().beta_hi()}}};
  if (const QuatPoly* p = f.stem().poly()) {
    j["type"] = "polynomial";
    json coeffs = json::array();
    for (const auto& c : p->coeffs()) coeffs.push_back(quat_json(c));
    j["coeffs"] = coeffs;
  } else if (const auto* ts = f.stem().two_slice_data()) {
    j["type"] = "twoslice";
    j["J"] = quat_json(ts->J.value());
    j["K"] = quat_json(ts->K.value());
    json gj = json::array(), gk = json::array();
    for (const auto& c : ts->on_j.coeffs()) gj.push_back(quat_json(c));
    for (const auto& c : ts->on_k.coeffs()) gk.push_back(quat_json(c));
    j["gJ"] = {{"coeffs", gj}};
    j["gK"] = {{"coeffs", gk}};
  } else {
    throw std::runtime_error("closure stems have no JSON spec form");
  }
  return j.dump(2);
}

std::string quaternion_to_json(const Quaternion& q) { return quat_json(q).dump(); }

std::string expansion_to_json(const SphericalExpansion& e) {
  json j;
  j["center"] = quat_json(e.center);
  json coeffs = json::array();
  for (const auto& c : e.coeffs) coeffs.push_back(quat_json(c));
  j["coeffs"] = coeffs;
  return j.dump(2);
}

std::string differential_to_json(const RealDifferential& d) {
  json j;
  j["point"] = quat_json(d.point);
  json basis = json::array();
  for (const auto& b : d.basis) basis.push_back(quat_json(b));
  j["basis"] = basis;
  json rows = json::array();
  for (int r = 0; r < 4; ++r)
    rows.push_back(json::array({d.matrix[r][0], d.matrix[r][1], d.matrix[r][2],
                                d.matrix[r][3]}));
  j["matrix"] = rows;
  j["rank"] = d.rank;
  return j.dump(2);
}

std::string cloud_to_string(const SurfaceCloud& cloud, ExportFormat format) {
  if (format == ExportFormat::csv) {
    std::string out = "alpha,beta,ux,uy,uz,kind\n";
    for (const auto& p : cloud.points) {
      out += fmt(p.z.real());
      out += ',';
      out += fmt(p.z.imag());
      out += ',';
      out += fmt(p.unit.x);
      out += ',';
      out += fmt(p.unit.y);
      out += ',';
      out += fmt(p.unit.z);
      out += ',';
      out += kind_name(p);
      out += '\n';
    }
    return out;
  }
  json j;
  const char* prov = cloud.provenance == SurfaceCloud::Provenance::zero_surface
                         ? "zero_surface"
                         : cloud.provenance == SurfaceCloud::Provenance::singular_set
                               ? "singular_set"
                               : "degenerate_set";
  j["metadata"] = {{"provenance", prov},
                   {"grid", grid_json(cloud.grid)},
                   {"conditioning_warning", cloud.conditioning_warning},
                   {"cell_occupancy", cloud.cell_occupancy}};
  json pts = json::array();
  for (const auto& p : cloud.points)
    pts.push_back(json{{"alpha", p.z.real()},
                       {"beta", p.z.imag()},
                       {"unit", {p.unit.x, p.unit.y, p.unit.z}},
                       {"kind", kind_name(p)},
                       {"residual", p.residual}});
  j["points"] = pts;
  return j.dump(2) + "\n";
}

void export_cloud(const SurfaceCloud& cloud, const std::string& path,
                  ExportFormat format) {
  write_file(path, cloud_to_string(cloud, format));
}

std::string zero_records_to_string(const std::vector<ZeroRecord>& records,
                                   const GridSpec& grid, ExportFormat format) {
  if (format == ExportFormat::csv) {
    std::string out = "alpha,beta,ux,uy,uz,kind\n";
    for (const auto& r : records) {
      out += fmt(r.z.real());
      out += ',';
      out += fmt(r.z.imag());
      out += ',';
      out += fmt(r.unit.x);
      out += ',';
      out += fmt(r.unit.y);
      out += ',';
      out += fmt(r.unit.z);
      out += ',';
      out += kind_name(r.kind);
      out += '\n';
    }
    return out;
  }
  json j;
  j["metadata"] = {{"grid", grid_json(grid)}};
  json pts = json::array();
  for (const auto& r : records)
    pts.push_back(json{{"alpha", r.z.real()},
                       {"beta", r.z.imag()},
                       {"point", quat_json(r.point)},
                       {"unit", {r.unit.x, r.unit.y, r.unit.z}},
                       {"kind", kind_name(r.kind)}});
  j["points"] = pts;
  return j.dump(2) + "\n";
}

void export_zero_records(const std::vector<ZeroRecord>& records, const GridSpec& grid,
                         const std::string& path, ExportFormat format) {
  write_file(path, zero_records_to_string(records, grid, format));
}

std::string injectivity_report_to_json(const InjectivityReport& report) {
  json j;
  j["n_samples"] = report.n_samples;
  j["collision_count"] = report.collision_count;
  j["enumeration_capped"] = report.enumeration_capped;
  if (report.min_image_separation)
    j["min_image_separation"] = *report.min_image_separation;
  else
    j["min_image_separation"] = nullptr;
  json pairs = json::array();
  for (const auto& c : report.collisions)
    pairs.push_back(json{{"a", quat_json(c.a)}, {"b", quat_json(c.b)}});
  j["collisions"] = pairs;
  return j.dump(2);
}

}  // namespace slicereg
