#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "mvhr/suite.hpp"

using namespace mvhr;

namespace {

struct Common {
  std::string config;
  std::optional<std::size_t> n;
  std::vector<std::size_t> m;
  std::optional<std::uint64_t> seed;
  std::string workers;
  std::string out;
  std::string format;
};

unsigned parse_workers_flag(const std::string& s) {
  if (s.empty()) return 0;
  if (s == "auto") return std::max(1u, std::thread::hardware_concurrency());
  try {
    long v = std::stol(s);
    if (v > 0) return static_cast<unsigned>(v);
  } catch (...) {
  }
  throw ConfigError("--workers", "expected a positive integer or auto");
}

/// "path" or "path:k".
std::pair<Body, int> parse_body_ref(const std::string& ref) {
  std::string path = ref;
  int k = 1;
  auto colon = ref.rfind(':');
  if (colon != std::string::npos && colon + 1 < ref.size() &&
      ref.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
    path = ref.substr(0, colon);
    k = std::stoi(ref.substr(colon + 1));
  }
  if (!std::filesystem::exists(path)) throw InputError("body file not found: " + path);
  return {read_body_file(path), k};
}

void apply_overrides(SuiteConfig& c, const Common& o) {
  if (o.n) c.n = *o.n;
  if (!o.m.empty()) {
    for (std::size_t k = 1; k < o.m.size(); ++k)
      if (o.m[k] <= o.m[k - 1]) throw ConfigError("--m", "values must be strictly increasing");
    c.m = o.m;
  }
  if (o.seed) c.seed = *o.seed;
  if (!o.workers.empty()) c.workers = parse_workers_flag(o.workers);
  if (!o.out.empty()) c.out_dir = o.out;
  if (!o.format.empty()) {
    validate_format(o.format, "--format");
    c.format = o.format;
  }
}

int emit(const SuiteResult& res, const SuiteConfig& c) {
  if (res.exit_code == 2) {
    std::cerr << "error: " << res.diagnostic << '\n';
    return 2;
  }
  if (c.out_dir.empty()) {
    if (c.format == "csv")
      std::cout << reports_to_csv(res.reports);
    else
      std::cout << reports_to_json(res.reports).dump(2) << '\n';
  } else {
    for (const auto& r : res.reports)
      std::cout << r.id << ' ' << r.instance << " n=" << r.n << " m=" << r.m << ' ' << verdict_name(r.verdict)
                << " deficit=" << to_decimal(r.deficit) << '\n';
  }
  std::size_t fails = 0;
  for (const auto& r : res.reports) fails += r.ok() ? 0 : 1;
  std::cerr << res.reports.size() << " reports, " << fails << " failed\n";
  return res.exit_code;
}

int cmd_suite(const Common& o) {
  SuiteConfig c;
  if (o.config.empty()) {
    c = default_suite();
  } else {
    if (!std::filesystem::exists(o.config)) throw ConfigError("--config", "file not found: " + o.config);
    auto base = std::filesystem::path(o.config).parent_path().string();
    c = parse_suite_config(read_json_file(o.config), base.empty() ? "." : base);
  }
  apply_overrides(c, o);
  return emit(run_suite(c), c);
}

int cmd_check(const Common& o, const std::string& id, const std::vector<std::string>& bodies, std::size_t count,
              std::size_t i, const std::string& family) {
  SuiteConfig c;
  apply_overrides(c, o);
  if (std::find(known_checks().begin(), known_checks().end(), id) == known_checks().end())
    throw ConfigError("check", "unknown check '" + id + "'");
  CheckSpec s;
  s.id = id;
  s.count = count;
  s.i = i;
  s.family = family;
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    std::string name = "body" + std::to_string(k);
    c.bodies.emplace(name, parse_body_ref(bodies[k]).first);
    s.bodies.push_back(name);
  }
  c.checks.push_back(s);
  return emit(run_suite(c), c);
}

int cmd_mv(const Common& o, const std::vector<std::string>& refs) {
  if (refs.empty()) throw InputError("mv: no bodies given");
  std::vector<std::pair<Body, int>> entries;
  for (const auto& r : refs) entries.push_back(parse_body_ref(r));
  const std::size_t d = entries.front().first.dim();
  BodyList bl(d, entries);
  unsigned w = o.workers.empty() ? default_workers() : parse_workers_flag(o.workers);
  Scalar v = mixed_volume(bl, w);
  bool zonotopes_only = std::all_of(bl.entries().begin(), bl.entries().end(),
                                    [](const auto& e) { return e.first.is_zonotope(); });
  std::size_t weighted_gens = 0;
  for (const auto& [b, k] : bl.entries()) weighted_gens += b.data().size();
  bool feasible = zonotopes_only ? (d <= 8 && weighted_gens <= 24) : d <= kMaxHullDim;
  std::cout << to_string(v) << '\n' << to_decimal(v, 15) << '\n';
  if (feasible) {
    Scalar oracle = mv_polarization(bl);
    if (oracle != v) {
      std::cerr << "engine discrepancy: polarization gives " << to_string(oracle) << '\n';
      return 1;
    }
    std::cerr << "cross-check: polarization agrees\n";
  } else {
    std::cerr << "cross-check: skipped (polarization infeasible for this input)\n";
  }
  return 0;
}

json atom_json(const IntRow& d) {
  json a = json::array();
  for (const auto& x : d) a.push_back(x.get_str());
  return a;
}

int cmd_measure(const Common& o, const std::vector<std::string>& refs) {
  if (refs.size() != 2 && refs.size() != 4)
    throw InputError("measure: expected two bodies (surface measures) or four (K1 K2 L1 L2)");
  std::vector<Zonotope> zs;
  for (const auto& r : refs) {
    Body b = parse_body_ref(r).first;
    if (!b.is_zonotope()) throw UnsupportedError("measure: zonotope bodies required");
    zs.push_back(b.zonotope());
  }
  const std::size_t n = o.n.value_or(zs.front().dim());
  for (const auto& z : zs)
    if (z.dim() != n) throw InputError("measure: body dimension differs from n");
  std::size_t m = o.m.empty() ? 8 : o.m.front();
  std::uint64_t seed = o.seed.value_or(0);
  AtomicMeasure left(n), right(n);
  json out;
  if (zs.size() == 2) {
    if (n < 2) throw InputError("measure: n must be at least 2");
    left = mixed_area_measure({{zs[0], static_cast<int>(n - 1)}}, n);
    right = mixed_area_measure({{zs[1], static_cast<int>(n - 1)}}, n);
    out["kind"] = "surface";
  } else {
    if (n < 3) throw InputError("measure: mixed area measures need n >= 3");
    const Zonotope& b = make_ball(n, m, seed)->body;
    left = mixed_area_measure(zs[0], zs[1], b, n);
    right = mixed_area_measure(zs[2], zs[3], b, n);
    out["kind"] = "mixed";
    if (n > 3) {
      out["m"] = m;
      out["seed"] = make_ball(n, m, seed)->seed;
    }
  }
  out["n"] = n;
  auto diff = first_difference(left, right);
  out["result"] = diff ? "unequal" : "equal";
  out["atoms"] = json::array({left.atoms().size(), right.atoms().size()});
  if (diff)
    out["first_difference"] = json{{"direction", atom_json(diff->first)},
                                   {"left", to_string(diff->second.first)},
                                   {"right", to_string(diff->second.second)}};
  else
    out["first_difference"] = nullptr;
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact mixed volumes, mixed area measures and inequality checks"};
  app.require_subcommand(1);
  Common o;
  std::size_t n_flag = 0;
  std::uint64_t seed_flag = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "suite configuration file");
    sub->add_option("--n", n_flag, "ambient dimension");
    sub->add_option("--m", o.m, "ball resolution (repeatable)")->allow_extra_args(false);
    sub->add_option("--seed", seed_flag, "random seed");
    sub->add_option("--workers", o.workers, "worker threads or auto");
    sub->add_option("--out", o.out, "report directory");
    sub->add_option("--format", o.format, "json, csv or both");
  };
  auto* suite = app.add_subcommand("suite", "run a configured suite of checks");
  add_common(suite);

  std::vector<std::string> mv_refs;
  auto* mv = app.add_subcommand("mv", "mixed volume of bodies given as FILE[:multiplicity]");
  add_common(mv);
  mv->add_option("bodies", mv_refs)->required();

  std::vector<std::string> measure_refs;
  auto* measure = app.add_subcommand("measure", "compare surface or mixed area measures");
  add_common(measure);
  measure->add_option("bodies", measure_refs)->required();

  std::string check_id, family;
  std::vector<std::string> check_bodies;
  std::size_t count = 0, degree = 1;
  auto* check = app.add_subcommand("check", "run one check family");
  add_common(check);
  check->add_option("id", check_id)->required();
  check->add_option("--body", check_bodies, "body file (repeatable)")->allow_extra_args(false);
  check->add_option("--count", count, "size of the random family");
  check->add_option("--i", degree, "degree parameter for hard-lefschetz");
  check->add_option("--family", family, "instance family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* sub : {suite, mv, measure, check}) {
    if (sub->count("--n")) o.n = n_flag;
    if (sub->count("--seed")) o.seed = seed_flag;
  }

  try {
    if (!o.workers.empty()) set_default_workers(parse_workers_flag(o.workers));
    if (*suite) return cmd_suite(o);
    if (*mv) return cmd_mv(o, mv_refs);
    if (*measure) return cmd_measure(o, measure_refs);
    if (*check) return cmd_check(o, check_id, check_bodies, count, degree, family);
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
