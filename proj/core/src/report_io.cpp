#include "ruusc/report_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ruusc {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string fmt(const ExtReal& v) { return format_double(v.as_double()); }

void append_point(std::ostringstream& os, const Vec& p) {
  for (int i = 0; i < p.size(); ++i) os << format_double(p[i]) << ",";
}

json json_value(const ExtReal& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

}  // namespace

std::string to_csv(const ModulusProfile& p) {
  std::ostringstream os;
  const int dim = p.argmax_points.empty() ? 0 : static_cast<int>(p.argmax_points.front().size());
  os << "t,delta_estimate";
  for (int i = 0; i < dim; ++i) os << ",argmax_" << i;
  os << "\n";
  for (std::size_t k = 0; k < p.t_schedule.size(); ++k) {
    os << format_double(p.t_schedule[k]) << "," << fmt(p.delta_estimates[k]);
    const Vec& a = p.argmax_points[k];
    for (int i = 0; i < a.size(); ++i) os << "," << format_double(a[i]);
    os << "\n";
  }
  return os.str();
}

std::string to_csv(const StarShapeReport& r) {
  std::ostringstream os;
  os << "t,point...,mapped...\n";
  for (const auto& v : r.violations) {
    os << format_double(v.t) << ",";
    append_point(os, v.u);
    append_point(os, v.mapped);
    os << "\n";
  }
  return os.str();
}

std::string to_csv(const TheoremReport& r) {
  std::ostringstream os;
  const int dim = r.points.empty() ? 0 : static_cast<int>(r.points.front().point.size());
  os << "index";
  for (int i = 0; i < dim; ++i) os << ",point_" << i;
  os << ",lhs,rhs,gap\n";
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    const PointCheck& pc = r.points[k];
    os << k;
    for (int i = 0; i < pc.point.size(); ++i) os << "," << format_double(pc.point[i]);
    os << "," << fmt(pc.lhs) << "," << fmt(pc.rhs) << "," << fmt(pc.gap_value) << "\n";
  }
  return os.str();
}

std::string to_csv(const TabulatedFunction& t) {
  std::ostringstream os;
  const int dim = t.dim();
  for (int i = 0; i < dim; ++i) os << "node_" << i << ",";
  os << "value\n";
  for (long k = 0; k < t.node_count(); ++k) {
    const Vec p = t.node(k);
    for (int i = 0; i < dim; ++i) os << format_double(p[i]) << ",";
    os << fmt(t.values()[static_cast<std::size_t>(k)]) << "\n";
  }
  return os.str();
}

std::string to_csv(const MeshField& f) {
  std::ostringstream os;
  for (int i = 0; i < f.mesh.d; ++i) os << "x_" << i << ",";
  for (int k = 0; k < f.mesh.components; ++k) os << "u_" << k << (k + 1 < f.mesh.components ? "," : "\n");
  for (long n = 0; n < f.mesh.node_count(); ++n) {
    const Vec x = f.node_coords(n);
    for (int i = 0; i < f.mesh.d; ++i) os << format_double(x[i]) << ",";
    for (int k = 0; k < f.mesh.components; ++k)
      os << format_double(f.nodal(n, k)) << (k + 1 < f.mesh.components ? "," : "\n");
  }
  return os.str();
}

std::string to_json(const TheoremReport& r) {
  json j;
  j["statement"] = r.statement;
  j["tolerance"] = r.tolerance;
  j["resolutions"] = r.resolutions;
  j["max_gap_per_resolution"] = r.max_gap_per_resolution;
  j["verdict"] = r.passed ? "pass" : "fail";
  j["notes"] = r.notes;
  json pts = json::array();
  for (const auto& pc : r.points) {
    json p;
    p["point"] = std::vector<double>(pc.point.data(), pc.point.data() + pc.point.size());
    p["lhs"] = json_value(pc.lhs);
    p["rhs"] = json_value(pc.rhs);
    p["gap"] = json_value(pc.gap_value);
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j.dump(2) + "\n";
}

std::string to_json(const RuUscCertificate& c) {
  json j;
  j["verdict"] = c.verdict_str();
  j["a_used"] = c.a_used;
  j["limsup_estimate"] = json_value(c.limsup_estimate);
  j["tail_length"] = c.tail_length;
  j["eps_cert"] = c.eps_cert;
  j["sample_count"] = c.sample_count;
  j["seed"] = c.seed;
  j["a_candidates"] = c.a_candidates;
  if (c.witness) {
    json w;
    w["t"] = c.witness->t;
    w["a"] = c.witness->a;
    w["ratio"] = c.witness->ratio;
    w["u"] = std::vector<double>(c.witness->u.data(), c.witness->u.data() + c.witness->u.size());
    j["witness"] = std::move(w);
  }
  return j.dump(2) + "\n";
}

std::string to_json(const SEpsilonReport& r) {
  json j;
  j["eps"] = r.eps;
  j["zero_is_member"] = r.zero_is_member;
  j["witness_pair_in"] = r.witness_pair_in;
  j["witness_midpoint_out"] = r.witness_midpoint_out;
  j["radial_checked"] = r.radial_checked;
  j["radial_violations"] = r.radial_violations;
  j["unbounded_ray_ok"] = r.unbounded_ray_ok;
  j["rank_one_checked"] = r.rank_one_checked;
  j["rank_one_violations"] = r.rank_one_violations;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace ruusc
