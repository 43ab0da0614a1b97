#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvhr/geom.hpp"
#include "mvhr/measures.hpp"
#include "mvhr/valg.hpp"

namespace mvhr {

using json = nlohmann::ordered_json;

inline json scalar_to_json(const Scalar& q) { return to_string(q); }

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw InputError("expected a rational string, got " + j.dump());
}

inline json body_to_json(const Body& b) {
  json data = json::array();
  for (const auto& v : b.data()) {
    json row = json::array();
    for (const auto& x : v) row.push_back(scalar_to_json(x));
    data.push_back(std::move(row));
  }
  return json{{"dim", b.dim()}, {"kind", b.is_zonotope() ? "zonotope" : "vpolytope"}, {"data", std::move(data)}};
}

inline Body body_from_json(const json& j) {
  if (!j.is_object()) throw InputError("body: expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw InputError("body: missing integer field 'dim'");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InputError("body: missing field 'kind'");
  if (!j.contains("data") || !j["data"].is_array()) throw InputError("body: missing array field 'data'");
  long dim = j["dim"].get<long>();
  if (dim <= 0) throw InputError("body: 'dim' must be positive");
  std::vector<Vector> vs;
  for (const auto& row : j["data"]) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      throw InputError("body: every row of 'data' needs 'dim' entries");
    std::vector<Scalar> c;
    for (const auto& x : row) c.push_back(scalar_from_json(x));
    vs.emplace_back(std::move(c));
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zonotope") return Zonotope(static_cast<std::size_t>(dim), std::move(vs));
  if (kind == "vpolytope") return VPolytope(static_cast<std::size_t>(dim), std::move(vs));
  throw InputError("body: 'kind' must be zonotope or vpolytope");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Body read_body_file(const std::string& path) { return body_from_json(read_json_file(path)); }

inline json measure_to_json(const AtomicMeasure& m) {
  json out = json::array();
  for (const auto& [d, r] : m.atoms()) {
    json dir = json::array();
    for (const auto& x : d) dir.push_back(x.get_str());
    out.push_back(json{{"direction", std::move(dir)}, {"magnitude", scalar_to_json(r)}});
  }
  return out;
}

inline AtomicMeasure measure_from_json(const json& j, std::size_t dim) {
  AtomicMeasure m(dim);
  for (const auto& atom : j) {
    IntRow d;
    for (const auto& x : atom.at("direction")) d.emplace_back(x.is_string() ? x.get<std::string>() : x.dump());
    if (d.size() != dim) throw InputError("measure: direction dimension mismatch");
    m.add(std::move(d), scalar_from_json(atom.at("magnitude")));
  }
  return m;
}

inline json valuation_to_json(const Valuation& v) {
  json terms = json::array();
  for (const auto& t : v.terms()) {
    json refs = json::array();
    for (const auto& r : t.basis.refs) refs.push_back(body_to_json(r));
    terms.push_back(json{{"coefficient", scalar_to_json(t.coeff)}, {"degree", t.basis.degree}, {"refs", std::move(refs)}});
  }
  return terms;
}

/// Refs may be inline body objects or paths to body files.
inline Valuation valuation_from_json(const json& j, std::size_t n) {
  Valuation v(n);
  for (const auto& t : j) {
    std::vector<Body> refs;
    for (const auto& r : t.at("refs")) refs.push_back(r.is_string() ? read_body_file(r.get<std::string>()) : body_from_json(r));
    v.add(scalar_from_json(t.at("coefficient")), BasisValuation(n, t.at("degree").get<std::size_t>(), std::move(refs)));
  }
  return v;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace mvhr
