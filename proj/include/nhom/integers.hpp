#pragma once

#include <gmpxx.h>

#include <string>

namespace nhom {

/// Exact arbitrary-precision integer. Normal-form pivoting blows
/// intermediate entries past any fixed width even on small inputs, so every
/// arithmetic path in the engine goes through this type.
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Quotient truncated toward zero; the remainder a - q*b satisfies
/// |a - q*b| < |b|.
inline Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Floor quotient; for b > 0 the remainder lies in [0, b).
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Nonnegative remainder of a mod m, m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool abs_less(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool fits_long(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline long to_long(const Int& a) { return mpz_get_si(a.get_mpz_t()); }

inline std::string to_string(const Int& a) { return a.get_str(); }

}  // namespace nhom
