#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvhr {

/// Exact rational number. Always canonical (lowest terms, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

/// Malformed or inconsistent input (bad dimensions, bad multiplicities, parse errors).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input that is well formed but outside what an engine supports (e.g. hull dimension caps).
struct UnsupportedError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Valuation degree bookkeeping violated.
struct DegreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", "-p/q" or "p". Throws InputError on anything else.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash) throw InputError("malformed rational literal: " + s);
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw InputError("malformed rational literal: " + s);
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw InputError("malformed rational literal: " + s);
  if (s[0] == '+') s.erase(0, 1);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

/// Presentation-only decimal rendering with `digits` significant digits.
inline std::string to_decimal(const Scalar& q, int digits = 15) {
  mpf_class f(0, 256);
  f = q;
  std::string fmt = "%." + std::to_string(digits) + "Fg";
  char buf[128];
  gmp_snprintf(buf, sizeof buf, fmt.c_str(), f.get_mpf_t());
  return buf;
}

inline Scalar abs(const Scalar& q) { return q < 0 ? Scalar(-q) : q; }

inline Integer factorial(unsigned k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Closed rational interval; `exact` means lo == hi is the true value.
struct Enclosure {
  Scalar lo;
  Scalar hi;
  bool exact = false;

  Scalar width() const { return hi - lo; }
  Scalar mid() const { return (lo + hi) / 2; }
  Enclosure& operator+=(const Enclosure& o) {
    lo += o.lo;
    hi += o.hi;
    exact = exact && o.exact;
    return *this;
  }
};

/// Encloses sqrt(q) for q >= 0 between dyadic rationals of width 2^-bits (scaled by the
/// denominator); exact when q is a perfect square of a rational.
inline Enclosure sqrt_enclosure(const Scalar& q, unsigned bits = 96) {
  if (q < 0) throw InputError("sqrt of negative rational");
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
    Scalar r(a, b);
    r.canonicalize();
    return {r, r, true};
  }
  // sqrt(num/den) = sqrt(num*den) / den
  Integer scaled = num * den;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Integer scale = den;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Scalar lo(s, scale), hi(s + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi, false};
}

/// Rational approximation of pi used wherever a single value is needed
/// (relative error about 1.3e-13).
inline Scalar pi_approx() { return Scalar(4272943, 1360120); }

/// Certified enclosure of pi (width 1e-20).
inline Enclosure pi_enclosure() {
  Scalar lo = parse_scalar("314159265358979323846/100000000000000000000");
  Scalar hi = parse_scalar("314159265358979323847/100000000000000000000");
  return {lo, hi, false};
}

/// Rounds q to the nearest multiple of 2^-bits.
inline Scalar round_dyadic(const Scalar& q, unsigned bits) {
  Integer scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits + 1);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  scaled += 1;
  mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 1);
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Scalar r(scaled, den);
  r.canonicalize();
  return r;
}

}  // namespace mvhr
