#pragma once

// Almost-square domain types, the exact window-membership predicate and the
// scan-based verification oracle.
//
// An integer n is an almost square of type 1 for window parameters (theta, C)
// if n = a*b with both factors in [sqrt(n) - C n^theta, sqrt(n) + C n^theta];
// type 2 needs two factorizations n = a1 b1 = a2 b2 with a1 < a2 <= b2 < b1
// all in the window.

#include <optional>
#include <vector>

#include "asq/arith.hpp"
#include "asq/error.hpp"

namespace asq {

struct window_params {
  rational theta;  // in [0, 1/2]
  rational c;      // > 0
  void validate() const;
};

struct type1_witness {
  nat n, a, b;  // a*b == n, a <= b
};

struct type2_witness {
  nat n;
  nat a1, b1, a2, b2;  // n = a1*b1 = a2*b2, a1 < a2 <= b2 < b1
  nat d1, d2, e1, e2;  // a1 = d1 e1, b1 = d2 e2, a2 = d1 e2, b2 = d2 e1
};

// checks every type2_witness identity exactly; throws decomposition_failed
void validate(const type2_witness& w);

// Integer endpoints of the membership test. n^theta is irrational in
// general; it is replaced by its integer floor t, which narrows the window
// by less than C. Every integer in [lo, hi] is certainly inside the
// definition window.
struct window_bounds {
  nat lo, hi;  // empty window iff lo > hi
};

window_bounds type_window(const nat& n, const window_params& p);
bool factor_in_window(const nat& f, const window_bounds& w);
// all four factors of w inside the (theta, C) window of w.n
bool witness_in_window(const type2_witness& w, const window_params& p);

// divisors a of n with lo <= a <= hi, ascending; plain scan, so the range
// width is capped by `budget` candidates
std::vector<nat> window_divisors(const nat& n, const nat& lo, const nat& hi,
                                 unsigned long budget = default_scan_budget);

struct verify_report {
  nat n;
  window_params params;
  nat window_lo, window_hi;
  std::optional<type1_witness> type1;
  std::optional<type2_witness> type2;
  // reporting conveniences (never used in predicates):
  // theta_est = log(max |f - sqrt n|) / log n, c_est = max |f - sqrt n| / n^theta
  double theta_est = 0.0;
  double c_est = 0.0;
};

verify_report verify_type1(const nat& n, const window_params& p,
                           unsigned long budget = default_scan_budget);
verify_report verify_type2(const nat& n, const window_params& p,
                           unsigned long budget = default_scan_budget);

struct decomposition {
  nat d1, d2, e1, e2;
};

// canonical (d, e) split of a pair of factorizations: d1 = gcd(a1, a2),
// e1 = a1/d1, e2 = a2/d1, d2 = b2/e1
decomposition derive_decomposition(const nat& a1, const nat& b1, const nat& a2,
                                   const nat& b2);

type2_witness make_type2_witness(const nat& a1, const nat& b1, const nat& a2,
                                 const nat& b2);

}  // namespace asq
