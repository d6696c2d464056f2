#ifndef CHARVAR_IO_HPP
#define CHARVAR_IO_HPP

#include <charvar/cover.hpp>
#include <charvar/locus.hpp>
#include <charvar/morse.hpp>
#include <charvar/rep.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>

namespace charvar::io {

using json = nlohmann::json;

inline json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline Quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::invalid_argument, "quaternion must be [w, x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline json to_json(const PuncturedSphereRep& rep) {
  json m = json::array();
  for (const auto& q : rep.meridians()) m.push_back(to_json(q));
  return {{"kind", "punctured_sphere"}, {"k", rep.k()}, {"meridians", m}};
}

inline json to_json(const SurfaceRep& s) {
  return {{"kind", "surface"},
          {"generators",
           {{"r1", to_json(s.r1())}, {"s1", to_json(s.s1())}, {"r2", to_json(s.r2())}, {"s2", to_json(s.s2())}}}};
}

inline PuncturedSphereRep rep_from_json(const json& j, const Tolerances& tol = kDefaultTolerances) {
  if (j.value("kind", "") != "punctured_sphere")
    throw Error(ErrorCode::invalid_argument, "expected kind punctured_sphere");
  std::vector<Quaternion> m;
  for (const auto& q : j.at("meridians")) m.push_back(quaternion_from_json(q));
  return make_rep(std::move(m), tol);
}

inline SurfaceRep surface_from_json(const json& j, const Tolerances& tol = kDefaultTolerances) {
  if (j.value("kind", "") != "surface") throw Error(ErrorCode::invalid_argument, "expected kind surface");
  const json& g = j.at("generators");
  return make_surface_rep(quaternion_from_json(g.at("r1")), quaternion_from_json(g.at("s1")),
                          quaternion_from_json(g.at("r2")), quaternion_from_json(g.at("s2")), tol);
}

inline json to_json(const Fingerprint& fp) {
  json out = json::object();
  out["labels"] = fp.labels;
  out["values"] = fp.values;
  return out;
}

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fingerprint_csv(const Fingerprint& fp) {
  std::ostringstream os;
  os << "label,value\n";
  for (std::size_t i = 0; i < fp.size(); ++i) os << fp.labels[i] << ',' << format_double(fp.values[i]) << '\n';
  return os.str();
}

/// FNV-1a over the fingerprint values rounded to 1e-9.
inline std::uint64_t fingerprint_digest(const Fingerprint& fp) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : fp.values) {
    const long long r = std::llround(v * 1e9);
    const std::string s = std::to_string(r) + ';';
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline json to_json(const FiberReport& r) {
  json fps = json::array();
  for (const auto& fp : r.classes) fps.push_back(to_json(fp));
  return {{"on_branch", r.on_branch},
          {"class_count", r.classes.size()},
          {"fingerprints", fps},
          {"witnesses", json::array({to_json(r.witnesses[0]), to_json(r.witnesses[1])})}};
}

inline json to_json(const HessianReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.A.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.A.cols(); ++j) row.push_back(r.A(i, j).convert_to<int>());
    rows.push_back(row);
  }
  json out{{"n", r.n},
           {"A", rows},
           {"det_A", r.det_A.str()},
           {"det_odd", r.det_odd},
           {"pfaffian", r.pfaffian ? json(r.pfaffian->str()) : json(nullptr)},
           {"pfaffian_squared_is_det", r.pfaffian_squared_is_det},
           {"b_squared_identity_mod2", r.b_squared_identity_mod2},
           {"step", r.step},
           {"eig_positive", r.eig_positive},
           {"eig_negative", r.eig_negative},
           {"fd_max_error", r.fd_max_error},
           {"fd_error_stated_sign", r.fd_error_stated_sign},
           {"link", r.link},
           {"quotient_link", r.quotient_link},
           {"bd_link", r.bd_link}};
  return out;
}

inline std::string link_csv_header(int n) {
  std::string h;
  const int m = 2 * n - 2;
  for (int i = 1; i <= m; ++i) h += "x" + std::to_string(i) + ',';
  for (int i = 1; i <= m; ++i) h += "y" + std::to_string(i) + ',';
  return h + "is_real_tag";
}

inline std::string link_csv_row(const LinkPoint& p) {
  std::string row;
  for (const auto& z : p.zs) row += format_double(z.real()) + ',';
  for (const auto& z : p.zs) row += format_double(z.imag()) + ',';
  return row + (p.is_real ? "1" : "0");
}

}  // namespace charvar::io

#endif  // CHARVAR_IO_HPP
