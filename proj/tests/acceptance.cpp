// Acceptance driver: each criterion builds a list of reports and a pass condition.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>

#include "mvhr/suite.hpp"

using namespace mvhr;

namespace {

struct Outcome {
  std::vector<CheckReport> reports;
  bool pass = true;
  std::string note;
};

CheckReport equality_report(const std::string& id, std::size_t n, json inputs, const Scalar& lhs, const Scalar& rhs) {
  CheckReport r;
  r.id = id;
  r.n = n;
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.deficit = lhs - rhs;
  r.exact_mode = true;
  r.verdict = judge(r.deficit, 0, true, true);
  return r;
}

bool all_ok(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.ok(); });
}

std::size_t count_verdict(const std::vector<CheckReport>& rs, Verdict v) {
  return std::count_if(rs.begin(), rs.end(), [v](const CheckReport& r) { return r.verdict == v; });
}

json list_json(const BodyList& bl) {
  json a = json::array();
  for (const auto& [b, k] : bl.entries()) a.push_back(json{{"body", body_to_json(b)}, {"multiplicity", k}});
  return a;
}

// 1. Engine equivalence on random zonotope lists.
Outcome ac1(unsigned w) {
  Outcome o;
  Rng rng(1001);
  for (int t = 0; t < 120; ++t) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 6));
    const std::size_t budget = d <= 4 ? 20 : 12;
    BodyList bl(d);
    std::size_t left = d, gens = 0;
    while (left > 0) {
      std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(left)));
      std::size_t g = static_cast<std::size_t>(rng.uniform_int(1, 4));
      if (gens + g > budget) g = 1;
      std::vector<Vector> gv;
      for (std::size_t i = 0; i < g; ++i) gv.push_back(random_int_vector(rng, d, 3));
      bl.add(Zonotope(d, std::move(gv)), static_cast<int>(k));
      gens += g;
      left -= k;
    }
    o.reports.push_back(equality_report("ac1-engines", d, list_json(bl), mv_zonotope(bl, w), mv_polarization(bl)));
  }
  o.pass = all_ok(o.reports);
  return o;
}

// 2. Symmetric odd inequality: exact equality.
Outcome ac2(unsigned w) {
  Outcome o;
  Rng rng(1002);
  for (std::size_t n : {2u, 3u})
    for (auto& a : inequality_family("odd", n, rng, 12, n + 1, "symmetric"))
      o.reports.push_back(check_odd_inequality(a, n, 8, 1, w));
  o.pass = all_ok(o.reports) && std::all_of(o.reports.begin(), o.reports.end(), [](const CheckReport& r) {
             return r.exact_mode && r.deficit == 0;
           });
  return o;
}

// 3. Triangle family: within tolerance, negative parts shrinking.
Outcome ac3(unsigned w) {
  Outcome o;
  Rng rng(1003);
  auto fam = inequality_family("odd", 2, rng, 4, 0, "triangle");
  for (std::size_t k = 0; k < fam.size(); ++k) {
    std::vector<Scalar> neg;
    for (std::size_t m : {8u, 16u, 32u}) {
      auto r = check_odd_inequality(fam[k], 2, m, 0, w);
      r.instance = "triangle#" + std::to_string(k);
      if (r.deficit < 0) neg.push_back(-r.deficit);
      o.reports.push_back(std::move(r));
    }
    for (std::size_t i = 1; i < neg.size(); ++i)
      if (!(neg[i] < neg[i - 1])) o.pass = false;
  }
  o.pass = o.pass && all_ok(o.reports);
  std::size_t negative = std::count_if(o.reports.begin(), o.reports.end(), [](const CheckReport& r) { return r.deficit < 0; });
  o.note = std::to_string(negative) + " negative deficits, minimum " + to_decimal(std::min_element(o.reports.begin(), o.reports.end(), [](const CheckReport& a, const CheckReport& b) { return a.deficit < b.deficit; })->deficit, 6);
  return o;
}

// 4. Ball equality case of the even inequality.
Outcome ac4(unsigned w) {
  Outcome o;
  for (std::size_t n : {2u, 3u})
    for (std::size_t m : {8u, 12u}) {
      std::vector<Body> a(n - 1, Body(make_ball(n, m, 1)->body));
      o.reports.push_back(check_even_inequality(a, n, m, 1, w));
      o.reports.push_back(check_corollary(a, n, m, 1, w));
    }
  o.pass = all_ok(o.reports) && std::all_of(o.reports.begin(), o.reports.end(), [](const CheckReport& r) {
             return r.exact_mode && r.deficit == 0;
           });
  return o;
}

// 5. Even inequality and corollary on random symmetric instances.
Outcome ac5(unsigned w) {
  Outcome o;
  Rng rng(1005);
  for (std::size_t n : {2u, 3u}) {
    const std::size_t m = n == 2 ? 16 : 12;
    for (auto& a : inequality_family("even", n, rng, 20, n + 1, "symmetric")) {
      o.reports.push_back(check_even_inequality(a, n, m, 1, w));
      o.reports.push_back(check_corollary(a, n, m, 1, w));
    }
  }
  o.pass = all_ok(o.reports);
  return o;
}

// 6. Mixed-area-measure inequality, exact, on hypothesis-satisfying constructions, plus the
// quadratic form on primitive kernel vectors of pools of five.
Outcome ac6(unsigned w) {
  Outcome o;
  Rng rng(1006);
  const std::size_t n = 4;
  auto quads = mixed_area_family(n, rng, 6);
  // The first two are translates and swaps (any ball); the rest rely on the axis-cube ball B_4.
  for (std::size_t k = 0; k < quads.size(); ++k) {
    const auto& q = quads[k];
    o.reports.push_back(check_mixed_area_inequality(q[0], q[1], q[2], q[3], n, k < 2 ? 8 : n, 1, w));
  }
  std::size_t kernel_vectors = 0;
  const Zonotope& cube_ball = make_ball(n, n)->body;
  for (int p = 0; p < 2; ++p) {
    auto pool = random_pool(rng, n, 5, "box", 0);
    auto pc = primitivity_constraints(pool, n, cube_ball);
    Matrix g = gram_form(pool, cube_ball, w);
    for (const auto& v : pc.kernel()) {
      json inputs{{"pool", p}, {"vector", json::array()}};
      for (const auto& x : v) inputs["vector"].push_back(to_string(x));
      CheckReport r;
      r.id = "ac6-kernel";
      r.n = n;
      r.m = n;
      r.inputs = inputs;
      r.lhs = quadratic_form(g, v);
      r.deficit = r.lhs;
      r.exact_mode = true;
      r.verdict = judge(r.deficit, 0, true);
      o.reports.push_back(std::move(r));
      ++kernel_vectors;
    }
  }
  std::size_t hyp = 0;
  for (const auto& r : o.reports)
    if (r.id == "mixed-area" && r.verdict == Verdict::Pass) ++hyp;
  o.pass = all_ok(o.reports) && count_verdict(o.reports, Verdict::Vacuous) == 0 && kernel_vectors >= 5;
  o.note = std::to_string(hyp) + " quadruples, " + std::to_string(kernel_vectors) + " kernel vectors";
  return o;
}

// 7. Primitive Gram form: exact forms and float spectrum.
Outcome ac7(unsigned w) {
  Outcome o;
  Rng rng(1007);
  const std::size_t n = 4;
  for (int p = 0; p < 3; ++p) o.reports.push_back(check_hr_psd(random_pool(rng, n, 5, "box", 0), n, n, 1, w));
  for (int p = 0; p < 2; ++p) o.reports.push_back(check_hr_psd(random_pool(rng, n, 5, "translates", 5), n, 8, 1, w));
  o.reports.push_back(check_hr_psd(random_pool(rng, n, 5, "generic", 5), n, 8, 1, w));
  std::size_t vacuous = count_verdict(o.reports, Verdict::Vacuous);
  o.pass = all_ok(o.reports) && vacuous < o.reports.size();
  o.note = std::to_string(o.reports.size() - vacuous) + " non-vacuous pools, " + std::to_string(vacuous) + " vacuous";
  return o;
}

// 8. Hard Lefschetz rank preservation.
Outcome ac8(unsigned w) {
  Outcome o;
  Rng rng(1008);
  for (int p = 0; p < 10; ++p)
    o.reports.push_back(check_hard_lefschetz_rank(random_pool(rng, 4, 3, "generic", 5), 4, 1, 8, 1, w));
  o.pass = all_ok(o.reports) && std::all_of(o.reports.begin(), o.reports.end(),
                                            [](const CheckReport& r) { return r.lhs == 3; });
  return o;
}

// 9. Projection identity n vol(Z) = sum of atoms against the support function.
Outcome ac9(unsigned w) {
  Outcome o;
  Rng rng(1009);
  for (std::size_t n : {2u, 3u, 4u})
    for (int t = 0; t < 20; ++t) {
      Zonotope z = random_full_zonotope(rng, n, n + static_cast<std::size_t>(rng.uniform_int(0, 3)));
      AtomicMeasure s = mixed_area_measure({{z, static_cast<int>(n - 1)}}, n, w);
      o.reports.push_back(equality_report("ac9-projection", n, json{{"Z", body_to_json(z)}},
                                          Scalar(static_cast<long>(n)) * zonotope_volume(z), pairing(s, z)));
    }
  o.pass = all_ok(o.reports);
  return o;
}

// 10. Planar isoperimetric correspondence at m = 32: classes must agree outright.
Outcome ac10(unsigned w) {
  Outcome o;
  Rng rng(1010);
  for (const auto& a : isoperimetric_family(32, rng)) o.reports.push_back(check_isoperimetric_n2(a, 32, w));
  o.pass = count_verdict(o.reports, Verdict::Pass) == o.reports.size();
  for (const auto& r : o.reports)
    o.note += std::string(o.note.empty() ? "" : ", ") + r.extras["valuation_class"].get<std::string>() + "/" +
              r.extras["isoperimetric_class"].get<std::string>();
  return o;
}

using Criterion = std::function<Outcome(unsigned)>;

const std::vector<std::pair<std::string, Criterion>>& criteria() {
  static const std::vector<std::pair<std::string, Criterion>> c{
      {"AC1 engine equivalence", ac1},        {"AC2 symmetric odd equality", ac2},
      {"AC3 triangle odd family", ac3},       {"AC4 ball equality case", ac4},
      {"AC5 even/corollary generic", ac5},    {"AC6 mixed-area exact suite", ac6},
      {"AC7 primitive Gram PSD", ac7},        {"AC8 Lefschetz rank", ac8},
      {"AC9 projection identity", ac9},       {"AC10 isoperimetric classes", ac10}};
  return c;
}

}  // namespace

int main() {
  int failed = 0;
  std::vector<std::string> first_run;
  set_default_workers(1);
  for (const auto& [name, fn] : criteria()) {
    Stopwatch sw;
    Outcome o;
    std::string error;
    try {
      o = fn(1);
    } catch (const std::exception& e) {
      o.pass = false;
      error = e.what();
    }
    first_run.push_back(reports_to_json(o.reports, false).dump());
    std::printf("%s %s: %zu reports, %zu within tolerance, %zu vacuous%s%s (%.1f s)\n", o.pass ? "PASS" : "FAIL",
                name.c_str(), o.reports.size(), count_verdict(o.reports, Verdict::PassWithinTolerance),
                count_verdict(o.reports, Verdict::Vacuous), o.note.empty() ? "" : "; ",
                o.note.c_str(), sw.millis() / 1000);
    if (!error.empty()) std::printf("  error: %s\n", error.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }

  // 11. Determinism across worker counts.
  Stopwatch sw;
  set_default_workers(8);
  bool same = true;
  std::string diverged;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    std::string again;
    try {
      again = reports_to_json(criteria()[i].second(8).reports, false).dump();
    } catch (const std::exception& e) {
      again = e.what();
    }
    if (again != first_run[i]) {
      same = false;
      diverged += (diverged.empty() ? "" : ", ") + criteria()[i].first.substr(0, criteria()[i].first.find(' '));
    }
  }
  std::printf("%s AC11 determinism 1 vs 8 workers: %s (%.1f s)\n", same ? "PASS" : "FAIL",
              same ? "identical reports" : ("differs in " + diverged).c_str(), sw.millis() / 1000);
  failed += same ? 0 : 1;
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
