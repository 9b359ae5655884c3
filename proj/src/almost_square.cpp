#include "asq/almost_square.hpp"

#include <cmath>

namespace asq {

namespace {

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

void check_scan_width(const nat& lo, const nat& hi, unsigned long budget) {
  if (hi < lo) return;
  require(hi - lo < budget, errc::scan_budget, "oracle out of desk range: window needs " +
                                                   str(nat(hi - lo + 1)) + " candidates, budget " +
                                                   std::to_string(budget));
}

// max_j |f_j - sqrt(n)| in log form: |f - sqrt n| = |f^2 - n| / (f + sqrt n)
void fill_estimates(verify_report& rep, const std::vector<nat>& factors) {
  double best = -1.0;  // ln of the max distance
  bool all_exact = true;
  nat root = isqrt(rep.n);
  for (const nat& f : factors) {
    nat num = f * f - rep.n;
    num = abs(num);
    if (num == 0) continue;
    all_exact = false;
    double val = ln(num) - ln(nat(f + root));
    if (val > best) best = val;
  }
  if (all_exact) {
    rep.theta_est = 0.0;
    rep.c_est = 0.0;
    return;
  }
  double logn = ln(rep.n);
  rep.theta_est = best / logn;
  rep.c_est = std::exp(best - as_double(rep.params.theta) * logn);
}

}  // namespace

void window_params::validate() const {
  require(theta >= 0 && theta * 2 <= 1, errc::domain, "theta must lie in [0, 1/2]");
  require(c > 0, errc::domain, "C must be positive");
}

void validate(const type2_witness& w) {
  bool ok = w.a1 * w.b1 == w.n && w.a2 * w.b2 == w.n && w.a1 < w.a2 && w.a2 <= w.b2 &&
            w.b2 < w.b1 && w.d1 >= 1 && w.d2 >= 1 && w.e1 >= 1 && w.e2 >= 1 &&
            w.d1 * w.e1 == w.a1 && w.d2 * w.e2 == w.b1 && w.d1 * w.e2 == w.a2 &&
            w.d2 * w.e1 == w.b2;
  require(ok, errc::decomposition_failed, "type-2 witness identities do not hold");
}

window_bounds type_window(const nat& n, const window_params& p) {
  p.validate();
  nat t = floor_pow(n, p.theta);
  rational spread = p.c * rational(t);
  mpz_class lo = ceil_sqrt_plus(n, -spread);
  mpz_class hi = floor_sqrt_plus(n, spread);
  if (lo < 0) lo = 0;
  if (hi < 0) hi = 0;
  return {nat(lo), nat(hi)};
}

bool factor_in_window(const nat& f, const window_bounds& w) {
  return w.lo <= f && f <= w.hi;
}

bool witness_in_window(const type2_witness& w, const window_params& p) {
  window_bounds bounds = type_window(w.n, p);
  return factor_in_window(w.a1, bounds) && factor_in_window(w.b1, bounds) &&
         factor_in_window(w.a2, bounds) && factor_in_window(w.b2, bounds);
}

std::vector<nat> window_divisors(const nat& n, const nat& lo, const nat& hi,
                                 unsigned long budget) {
  require(n >= 1, errc::domain, "window_divisors needs n >= 1");
  std::vector<nat> out;
  if (hi < lo) return out;
  check_scan_width(lo, hi, budget);
  nat a = lo < 1 ? nat(1) : lo;
  for (; a <= hi; ++a) {
    if (mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t())) out.push_back(a);
  }
  return out;
}

verify_report verify_type1(const nat& n, const window_params& p, unsigned long budget) {
  require(n >= 1, errc::domain, "verify needs n >= 1");
  window_bounds w = type_window(n, p);
  verify_report rep;
  rep.n = n;
  rep.params = p;
  rep.window_lo = w.lo;
  rep.window_hi = w.hi;

  nat a_lo = w.lo < 1 ? nat(1) : w.lo;
  nat a_hi = isqrt(n);
  if (a_hi > w.hi) a_hi = w.hi;
  if (a_lo > a_hi) return rep;
  check_scan_width(a_lo, a_hi, budget);

  // b - a shrinks as a grows, so the first hit from the top is the best pair
  for (nat a = a_hi; a >= a_lo; --a) {
    if (!mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t())) continue;
    nat b = n / a;
    if (b > w.hi) break;  // only grows as a decreases
    rep.type1 = type1_witness{n, a, b};
    fill_estimates(rep, {a, b});
    break;
  }
  return rep;
}

verify_report verify_type2(const nat& n, const window_params& p, unsigned long budget) {
  require(n >= 1, errc::domain, "verify needs n >= 1");
  window_bounds w = type_window(n, p);
  verify_report rep;
  rep.n = n;
  rep.params = p;
  rep.window_lo = w.lo;
  rep.window_hi = w.hi;

  nat a_lo = w.lo < 1 ? nat(1) : w.lo;
  nat a_hi = isqrt(n);
  if (a_hi > w.hi) a_hi = w.hi;
  if (a_lo > a_hi) return rep;
  check_scan_width(a_lo, a_hi, budget);

  // smallest two in-window divisors with in-window cofactors
  std::optional<nat> first;
  for (nat a = a_lo; a <= a_hi; ++a) {
    if (!mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t())) continue;
    nat b = n / a;
    if (b > w.hi) continue;
    if (!first) {
      first = a;
      continue;
    }
    rep.type2 = make_type2_witness(*first, n / *first, a, b);
    fill_estimates(rep, {rep.type2->a1, rep.type2->b1, rep.type2->a2, rep.type2->b2});
    break;
  }
  return rep;
}

decomposition derive_decomposition(const nat& a1, const nat& b1, const nat& a2,
                                   const nat& b2) {
  require(a1 * b1 == a2 * b2, errc::domain, "products differ");
  require(a1 < a2 && a2 <= b2 && b2 < b1, errc::domain, "factor ordering violated");
  decomposition d;
  mpz_gcd(d.d1.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
  d.e1 = a1 / d.d1;
  d.e2 = a2 / d.d1;
  require(mpz_divisible_p(b2.get_mpz_t(), d.e1.get_mpz_t()) != 0, errc::decomposition_failed,
          "decomposition check failed: e1 does not divide b2");
  d.d2 = b2 / d.e1;
  require(d.d2 * d.e2 == b1 && d.d1 >= 1 && d.d2 >= 1 && d.e1 >= 1 && d.e2 >= 1,
          errc::decomposition_failed, "decomposition check failed: reconstruction mismatch");
  return d;
}

type2_witness make_type2_witness(const nat& a1, const nat& b1, const nat& a2,
                                 const nat& b2) {
  decomposition d = derive_decomposition(a1, b1, a2, b2);
  type2_witness w{a1 * b1, a1, b1, a2, b2, d.d1, d.d2, d.e1, d.e2};
  validate(w);
  return w;
}

}  // namespace asq
