#pragma once

// Exact integer/rational primitives shared by every module. All predicates
// that decide membership or ordering are evaluated in integer arithmetic;
// doubles appear only in reporting paths.

#include <gmpxx.h>

#include <string>

namespace asq {

using nat = mpz_class;       // arbitrary-precision nonnegative integer
using rational = mpq_class;  // exact rational, canonical form

inline constexpr unsigned long default_scan_budget = 100000000UL;

inline rational make_rat(long num, unsigned long den = 1) {
  rational q(num, den);
  q.canonicalize();
  return q;
}

// floor(sqrt(n))
nat isqrt(const nat& n);

// smallest g with g*g >= n
nat ceil_sqrt(const nat& n);

// floor(n^(1/k))
nat nth_root_floor(const nat& n, unsigned long k);

// floor(n^e) for rational e >= 0, as the integer v-th root of n^u
nat floor_pow(const nat& n, const rational& e);

// floor / ceil of c * x^e for rationals c > 0, e >= 0, evaluated exactly
nat floor_scaled_pow(const rational& c, const nat& x, const rational& e);
nat ceil_scaled_pow(const rational& c, const nat& x, const rational& e);

// exact order predicates against sqrt(n)
bool leq_sqrt(const rational& r, const nat& n);  // r <= sqrt(n)
bool geq_sqrt(const rational& r, const nat& n);  // r >= sqrt(n)

// smallest integer m with m >= sqrt(n) + s (may be negative for s < 0)
mpz_class ceil_sqrt_plus(const nat& n, const rational& s);
// largest integer m with m <= sqrt(n) + s (may be negative)
mpz_class floor_sqrt_plus(const nat& n, const rational& s);

// decimal string -> nat; rejects signs and non-digits
nat parse_nat(const std::string& text);
// "num/den", plain integer, or decimal ("0.63" -> 63/100), all exact
rational parse_rational(const std::string& text);

std::string str(const nat& n);
std::string str(const rational& q);

// natural log of n >= 1, valid far beyond double range
double ln(const nat& n);
double as_double(const rational& q);

}  // namespace asq
