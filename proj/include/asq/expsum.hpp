#pragma once

// Exponential sums over divisor candidates with exact phase reduction, and
// the Erdos-Turan hypothesis/conclusion checker. Phases are reduced as
// (l*X mod a)/a in integer arithmetic before any conversion to double; a
// naive double division of l*X/a loses the entire fractional part once X
// passes 2^53.

#include <complex>
#include <optional>
#include <vector>

#include "asq/arith.hpp"
#include "asq/divisor.hpp"
#include "asq/error.hpp"

namespace asq {

struct frac_point {
  nat num, den;  // value num/den in [0, 1), num < den
};

struct point_set {
  std::vector<frac_point> points;
  std::size_t size() const { return points.size(); }
};

// the fractional parts {x/a} for a in [lo, hi]
point_set points_from_quotients(const nat& x, const nat& lo, const nat& hi,
                                unsigned long budget = default_scan_budget);

// sum of e(l x / a) over a in [lo, hi]; fixed-tree reduction, so the result
// is bit-stable for a given range
std::complex<double> inner_sum(const nat& l, const nat& x, const nat& lo, const nat& hi,
                               unsigned long budget = default_scan_budget);

struct expsum_report {
  nat x, lo, hi, big_k;
  double s_value = 0.0;    // sum of |inner_sum| over l = K..2K
  double predicted = 0.0;  // (2K)^(1+p) X^(p - 2 alpha p + alpha q), alpha from hi
  double ratio = 0.0;      // s_value / predicted; the bound's constant is unknown,
                           // so this is reported, never asserted
  exponent_pair pair;
};

expsum_report S_sum(const nat& big_k, const nat& x, const nat& lo, const nat& hi,
                    const exponent_pair& pr = huxley_pair(),
                    unsigned long budget = default_scan_budget);

struct arc {
  rational start, length;  // half-open [start, start + length) taken mod 1
};

struct arc_count {
  rational start, length;
  long count = 0;      // points inside
  rational required;   // J * length / 2
};

struct et_report {
  unsigned long big_m = 0;
  std::vector<double> lhs_sums;  // |sum_j e(l x_j)| for l = 1..M
  bool hypothesis_ok = false;    // sum of lhs_sums <= J/10
  std::optional<arc_count> worst_arc;  // smallest margin count - required
  // an arc missing its guaranteed count while the hypothesis holds would
  // contradict the inequality; it can only mean an implementation bug
  bool conclusion_violated() const;
};

// arcs shorter than 4/(M+1) are rejected
et_report et_check(const point_set& pts, unsigned long big_m, const std::vector<arc>& arcs);

}  // namespace asq
