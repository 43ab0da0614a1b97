#pragma once

#include <array>
#include <filesystem>
#include <thread>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvhr/hrcheck.hpp"
#include "mvhr/instances.hpp"
#include "mvhr/io.hpp"
#include "mvhr/report.hpp"

namespace mvhr {

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> ids{"odd",     "even",          "corollary",     "mixed-area",
                                            "hr-psd",  "hard-lefschetz", "isoperimetric"};
  return ids;
}

/// One requested check. Bodies are referenced by name from the config's body table;
/// without explicit bodies a seeded default family is generated.
struct CheckSpec {
  std::string id;
  std::optional<std::size_t> n;
  std::vector<std::size_t> m;  // empty: use the suite levels
  std::vector<std::string> bodies;
  std::size_t count = 0;       // size of the random family
  std::size_t generators = 3;
  std::size_t i = 1;           // hard-lefschetz degree parameter
  std::string family;
};

struct SuiteConfig {
  std::size_t n = 2;
  std::vector<std::size_t> m{8, 16};
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: default_workers()
  std::map<std::string, Body> bodies;
  std::vector<CheckSpec> checks;
  std::string out_dir;
  std::string format = "both";
};

/// Error naming the offending configuration field.
struct ConfigError : InputError {
  ConfigError(const std::string& field, const std::string& what) : InputError(field + ": " + what) {}
};

namespace detail {

inline std::size_t positive_size(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) throw ConfigError(field, "expected a positive integer");
  return j.get<std::size_t>();
}

inline std::vector<std::size_t> m_levels(const json& j, const std::string& field) {
  std::vector<std::size_t> out;
  if (!j.is_array()) throw ConfigError(field, "expected an array of positive integers");
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(positive_size(j[k], field + "[" + std::to_string(k) + "]"));
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k] <= out[k - 1]) throw ConfigError(field, "values must be strictly increasing");
  return out;
}

inline unsigned parse_workers(const json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "auto") return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(positive_size(j, field));
}

}  // namespace detail

inline void validate_format(const std::string& f, const std::string& field) {
  if (f != "json" && f != "csv" && f != "both") throw ConfigError(field, "format must be json, csv or both");
}

/// Parses and validates a suite configuration document. Relative body paths are resolved
/// against `base_dir`.
inline SuiteConfig parse_suite_config(const json& j, const std::string& base_dir = ".") {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  static const std::vector<std::string> top{"n", "m", "seed", "workers", "bodies", "checks", "output"};
  for (const auto& [k, v] : j.items())
    if (std::find(top.begin(), top.end(), k) == top.end()) throw ConfigError(k, "unknown field");
  SuiteConfig c;
  if (j.contains("n")) c.n = detail::positive_size(j["n"], "n");
  if (j.contains("m")) c.m = detail::m_levels(j["m"], "m");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) throw ConfigError("seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("workers")) c.workers = detail::parse_workers(j["workers"], "workers");
  if (j.contains("bodies")) {
    if (!j["bodies"].is_object()) throw ConfigError("bodies", "expected an object of named bodies");
    for (const auto& [name, b] : j["bodies"].items()) {
      const std::string field = "bodies." + name;
      try {
        if (b.is_string()) {
          std::filesystem::path p(b.get<std::string>());
          if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
          if (!std::filesystem::exists(p)) throw ConfigError(field, "file not found: " + p.string());
          c.bodies.emplace(name, read_body_file(p.string()));
        } else {
          c.bodies.emplace(name, body_from_json(b));
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const InputError& e) {
        throw ConfigError(field, e.what());
      }
    }
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("checks", "expected an array");
    for (std::size_t k = 0; k < j["checks"].size(); ++k) {
      const json& cj = j["checks"][k];
      const std::string f = "checks[" + std::to_string(k) + "]";
      if (!cj.is_object()) throw ConfigError(f, "expected an object");
      CheckSpec s;
      if (!cj.contains("id") || !cj["id"].is_string()) throw ConfigError(f + ".id", "missing check id");
      s.id = cj["id"].get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), s.id) == known_checks().end())
        throw ConfigError(f + ".id", "unknown check '" + s.id + "'");
      for (const auto& [key, v] : cj.items()) {
        const std::string kf = f + "." + key;
        if (key == "id") continue;
        if (key == "n") s.n = detail::positive_size(v, kf);
        else if (key == "m") s.m = detail::m_levels(v, kf);
        else if (key == "count") s.count = detail::positive_size(v, kf);
        else if (key == "generators") s.generators = detail::positive_size(v, kf);
        else if (key == "i") {
          if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(kf, "expected a nonnegative integer");
          s.i = v.get<std::size_t>();
        } else if (key == "family") {
          if (!v.is_string()) throw ConfigError(kf, "expected a string");
          s.family = v.get<std::string>();
        } else if (key == "bodies") {
          if (!v.is_array()) throw ConfigError(kf, "expected an array of body names");
          for (const auto& nm : v) {
            if (!nm.is_string() || !c.bodies.count(nm.get<std::string>()))
              throw ConfigError(kf, "unknown body " + nm.dump());
            s.bodies.push_back(nm.get<std::string>());
          }
        } else {
          throw ConfigError(kf, "unknown field");
        }
      }
      c.checks.push_back(std::move(s));
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output", "expected an object");
    for (const auto& [key, v] : o.items()) {
      if (key == "dir") {
        if (!v.is_string()) throw ConfigError("output.dir", "expected a string");
        c.out_dir = v.get<std::string>();
      } else if (key == "format") {
        if (!v.is_string()) throw ConfigError("output.format", "expected a string");
        c.format = v.get<std::string>();
        validate_format(c.format, "output.format");
      } else {
        throw ConfigError("output." + key, "unknown field");
      }
    }
  }
  return c;
}

/// The built-in suite: the planar inequality families at the configured levels.
inline SuiteConfig default_suite() {
  SuiteConfig c;
  CheckSpec odd{"odd"};
  odd.family = "triangle";
  odd.count = 3;
  CheckSpec even{"even"};
  even.count = 5;
  CheckSpec cor{"corollary"};
  cor.count = 5;
  CheckSpec iso{"isoperimetric"};
  c.checks = {odd, even, cor, iso};
  return c;
}

namespace detail {

inline std::vector<Body> named(const SuiteConfig& c, const CheckSpec& s) {
  std::vector<Body> out;
  for (const auto& nm : s.bodies) out.push_back(c.bodies.at(nm));
  return out;
}

inline std::vector<Zonotope> named_zonotopes(const SuiteConfig& c, const CheckSpec& s, const std::string& field) {
  std::vector<Zonotope> out;
  for (const auto& b : named(c, s)) {
    if (!b.is_zonotope()) throw ConfigError(field, "zonotope bodies required");
    out.push_back(b.zonotope());
  }
  return out;
}

/// Groups `bodies` into consecutive (n-1)-tuples.
inline std::vector<std::vector<Body>> tuples_of(const std::vector<Body>& bodies, std::size_t n, const std::string& field) {
  if (bodies.empty() || bodies.size() % (n - 1) != 0)
    throw ConfigError(field, "body count must be a positive multiple of n-1");
  std::vector<std::vector<Body>> out;
  for (std::size_t k = 0; k < bodies.size(); k += n - 1) out.emplace_back(bodies.begin() + k, bodies.begin() + k + n - 1);
  return out;
}

}  // namespace detail

/// Default instance families, shared by the suite and the CLI.
inline std::vector<std::vector<Body>> inequality_family(const std::string& id, std::size_t n, Rng& rng,
                                                        std::size_t count, std::size_t gens,
                                                        const std::string& family) {
  std::vector<std::vector<Body>> out;
  if (family == "triangle") {
    if (n != 2) throw ConfigError("family", "the triangle family needs n = 2");
    out.push_back({standard_triangle()});
    for (std::size_t k = 1; k < std::max<std::size_t>(count, 1); ++k) out.push_back({random_triangle(rng)});
    return out;
  }
  if (!family.empty() && family != "symmetric") throw ConfigError("family", "unknown family '" + family + "'");
  (void)id;
  for (std::size_t k = 0; k < std::max<std::size_t>(count, 1); ++k) {
    std::vector<Body> a;
    for (std::size_t j = 0; j + 1 < n; ++j) a.emplace_back(random_full_zonotope(rng, n, std::max(gens, n)));
    out.push_back(std::move(a));
  }
  return out;
}

/// Constructed quadruples satisfying the mixed-area-measure hypothesis at the axis-cube ball (m = n):
/// translates, swaps, the two coordinate-square splittings and solved box partners.
inline std::vector<std::array<Zonotope, 4>> mixed_area_family(std::size_t n, Rng& rng, std::size_t count) {
  std::vector<std::array<Zonotope, 4>> out;
  auto sq = [n](std::size_t a, std::size_t b) {
    std::vector<Scalar> s(n, 0);
    s[a] = 1;
    s[b] = 1;
    return box(s);
  };
  Zonotope k1 = random_full_zonotope(rng, n, n + 1), k2 = random_full_zonotope(rng, n, n + 1);
  out.push_back({k1, k2, translate_of(k1, rng), translate_of(k2, rng)});
  out.push_back({k1, k2, k2, k1});
  out.push_back({sq(0, 2), sq(1, 3), sq(0, 1), sq(2, 3)});
  std::size_t found = 0;
  for (int attempt = 0; attempt < 1000 && found < std::max<std::size_t>(count, 1); ++attempt) {
    Zonotope a = random_box(rng, n), b = random_box(rng, n), c = random_box(rng, n);
    if (auto d = box_partner(a, b, c)) {
      out.push_back({a, b, c, *d});
      ++found;
    }
  }
  return out;
}

inline std::vector<Zonotope> random_pool(Rng& rng, std::size_t n, std::size_t size, const std::string& kind,
                                         std::size_t gens) {
  std::vector<Zonotope> pool;
  for (std::size_t k = 0; k < size; ++k) {
    if (kind == "box")
      pool.push_back(random_box(rng, n));
    else if (kind == "translates" && k % 2 == 1)
      pool.push_back(translate_of(pool.back(), rng));
    else
      pool.push_back(random_full_zonotope(rng, n, std::max(gens, n)));
  }
  return pool;
}

/// Planar bodies of the isoperimetric family: the ball itself, a square, a triangle and a
/// random zonotope.
inline std::vector<Body> isoperimetric_family(std::size_t m, Rng& rng) {
  return {Body(make_ball(2, m)->body), Body(unit_cube(2)), Body(standard_triangle()),
          Body(random_full_zonotope(rng, 2, 3))};
}

/// Runs one check spec at every level; reports are appended in a fixed order.
inline void run_check(const SuiteConfig& c, const CheckSpec& s, std::size_t index, unsigned workers,
                      std::vector<CheckReport>& out) {
  const std::string field = "checks[" + std::to_string(index) + "]";
  const std::size_t n = s.n.value_or(c.n);
  const auto levels = s.m.empty() ? c.m : s.m;
  Rng rng = Rng(c.seed).fork(index + 1);
  auto tag = [&](CheckReport r, std::size_t k) {
    r.instance = field + "#" + std::to_string(k);
    return r;
  };
  try {
    if (s.id == "odd" || s.id == "even" || s.id == "corollary") {
      auto fam = s.bodies.empty() ? inequality_family(s.id, n, rng, s.count, s.generators, s.family)
                                  : detail::tuples_of(detail::named(c, s), n, field + ".bodies");
      for (auto m : levels)
        for (std::size_t k = 0; k < fam.size(); ++k) {
          if (s.id == "odd") out.push_back(tag(check_odd_inequality(fam[k], n, m, c.seed, workers), k));
          if (s.id == "even") out.push_back(tag(check_even_inequality(fam[k], n, m, c.seed, workers), k));
          if (s.id == "corollary") out.push_back(tag(check_corollary(fam[k], n, m, c.seed, workers), k));
        }
    } else if (s.id == "isoperimetric") {
      if (n != 2) throw ConfigError(field + ".n", "isoperimetric check is planar (n = 2)");
      for (auto m : levels) {
        Rng local = rng;
        auto fam = s.bodies.empty() ? isoperimetric_family(m, local) : detail::named(c, s);
        for (std::size_t k = 0; k < fam.size(); ++k) out.push_back(tag(check_isoperimetric_n2(fam[k], m, workers), k));
      }
    } else if (s.id == "mixed-area") {
      std::vector<std::array<Zonotope, 4>> quads;
      if (s.bodies.empty()) {
        quads = mixed_area_family(n, rng, s.count);
      } else {
        auto zs = detail::named_zonotopes(c, s, field + ".bodies");
        if (zs.size() % 4 != 0) throw ConfigError(field + ".bodies", "need groups of four bodies K1 K2 L1 L2");
        for (std::size_t k = 0; k < zs.size(); k += 4) quads.push_back({zs[k], zs[k + 1], zs[k + 2], zs[k + 3]});
      }
      for (auto m : levels)
        for (std::size_t k = 0; k < quads.size(); ++k) {
          const auto& q = quads[k];
          out.push_back(tag(check_mixed_area_inequality(q[0], q[1], q[2], q[3], n, m, c.seed, workers), k));
        }
    } else if (s.id == "hr-psd" || s.id == "hard-lefschetz") {
      std::vector<std::vector<Zonotope>> pools;
      if (s.bodies.empty()) {
        std::string kind = s.family.empty() ? (s.id == "hr-psd" ? "box" : "generic") : s.family;
        if (kind != "box" && kind != "generic" && kind != "translates")
          throw ConfigError(field + ".family", "pool family must be box, generic or translates");
        std::size_t size = s.id == "hr-psd" ? 5 : 3;
        for (std::size_t k = 0; k < std::max<std::size_t>(s.count, 1); ++k)
          pools.push_back(random_pool(rng, n, size, kind, s.generators));
      } else {
        pools.push_back(detail::named_zonotopes(c, s, field + ".bodies"));
      }
      for (auto m : levels)
        for (std::size_t k = 0; k < pools.size(); ++k) {
          if (s.id == "hr-psd")
            out.push_back(tag(check_hr_psd(pools[k], n, m, c.seed, workers), k));
          else
            out.push_back(tag(check_hard_lefschetz_rank(pools[k], n, s.i, m, c.seed, workers), k));
        }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(field, e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(field, e.what());
  }
}

struct SuiteResult {
  int exit_code = 0;
  std::vector<CheckReport> reports;
  std::string diagnostic;
};

inline void write_reports(const std::vector<CheckReport>& reports, const std::string& dir, const std::string& format) {
  std::filesystem::create_directories(dir);
  if (format == "json" || format == "both") {
    std::ofstream f(std::filesystem::path(dir) / "report.json");
    f << reports_to_json(reports).dump(2) << '\n';
  }
  if (format == "csv" || format == "both") {
    std::ofstream f(std::filesystem::path(dir) / "report.csv");
    f << reports_to_csv(reports);
  }
}

/// Exit code 0 when every verdict passes, 1 on any failure, 2 on input errors.
inline SuiteResult run_suite(const SuiteConfig& c) {
  SuiteResult res;
  unsigned workers = c.workers ? c.workers : default_workers();
  try {
    if (c.m.empty()) throw ConfigError("m", "at least one level required");
    for (std::size_t k = 1; k < c.m.size(); ++k)
      if (c.m[k] <= c.m[k - 1]) throw ConfigError("m", "values must be strictly increasing");
    validate_format(c.format, "output.format");
    for (std::size_t k = 0; k < c.checks.size(); ++k) run_check(c, c.checks[k], k, workers, res.reports);
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.diagnostic = e.what();
    res.reports.clear();
    return res;
  }
  for (const auto& r : res.reports)
    if (!r.ok()) res.exit_code = 1;
  if (!c.out_dir.empty()) write_reports(res.reports, c.out_dir, c.format);
  return res;
}

}  // namespace mvhr
