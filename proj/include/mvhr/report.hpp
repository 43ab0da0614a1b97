#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "mvhr/io.hpp"
#include "mvhr/scalar.hpp"

namespace mvhr {

enum class Verdict { Pass, PassWithinTolerance, Vacuous, Fail };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassWithinTolerance: return "pass-within-tolerance";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Fail: return "fail";
  }
  return "fail";
}

inline bool verdict_ok(Verdict v) { return v != Verdict::Fail; }

struct CheckReport {
  std::string id;
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  json inputs = json::object();
  Scalar lhs = 0;
  Scalar rhs = 0;
  Scalar deficit = 0;
  Scalar tolerance = 0;
  bool exact_mode = false;
  Verdict verdict = Verdict::Fail;
  double millis = 0;
  json extras = json::object();

  std::string digest() const { return fnv1a_hex(inputs.dump()); }
  bool ok() const { return verdict_ok(verdict); }
};

/// Exact mode: deficit must be >= 0 (or == 0 when `equality` is set).
/// Tolerance mode: deficit >= 0 passes, deficit >= -tolerance passes within tolerance.
inline Verdict judge(const Scalar& deficit, const Scalar& tolerance, bool exact, bool equality = false) {
  if (exact) {
    if (equality) return deficit == 0 ? Verdict::Pass : Verdict::Fail;
    return deficit >= 0 ? Verdict::Pass : Verdict::Fail;
  }
  if (deficit >= 0) return Verdict::Pass;
  if (deficit >= -tolerance) return Verdict::PassWithinTolerance;
  return Verdict::Fail;
}

inline json report_to_json(const CheckReport& r, bool with_timing = true) {
  json j{{"id", r.id},
         {"instance", r.instance},
         {"n", r.n},
         {"m", r.m},
         {"seed", r.seed},
         {"digest", r.digest()},
         {"lhs", to_string(r.lhs)},
         {"rhs", to_string(r.rhs)},
         {"deficit", to_string(r.deficit)},
         {"deficit_decimal", to_decimal(r.deficit)},
         {"tolerance", to_string(r.tolerance)},
         {"exact_mode", r.exact_mode},
         {"verdict", verdict_name(r.verdict)},
         {"inputs", r.inputs},
         {"extras", r.extras}};
  if (with_timing) j["millis"] = r.millis;
  return j;
}

inline json reports_to_json(const std::vector<CheckReport>& rs, bool with_timing = true) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(report_to_json(r, with_timing));
  return a;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string reports_to_csv(const std::vector<CheckReport>& rs) {
  std::ostringstream os;
  os << "id,n,m,seed,lhs,rhs,deficit,tolerance,verdict,millis\n";
  for (const auto& r : rs) {
    os << csv_field(r.id + (r.instance.empty() ? "" : ":" + r.instance)) << ',' << r.n << ',' << r.m << ',' << r.seed
       << ',' << to_string(r.lhs) << ',' << to_string(r.rhs) << ',' << to_string(r.deficit) << ','
       << to_string(r.tolerance) << ',' << verdict_name(r.verdict) << ',' << r.millis << '\n';
  }
  return os.str();
}

/// Wall-clock helper for report timings.
class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace mvhr
