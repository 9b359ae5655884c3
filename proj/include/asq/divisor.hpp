#pragma once

// Almost-divisor search: find a in [c1 X^alpha, c2 X^alpha] so that X is
// within a small remainder of a multiple of a. Also the exponent-pair
// calculus (A/B processes, the L-exponent bound, phi*/theta*).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asq/arith.hpp"
#include "asq/error.hpp"

namespace asq {

enum class divisor_side {
  below,  // remainder = X mod a
  above,  // remainder = a*ceil(X/a) - X
};

struct scan_range {
  nat lo, hi;
};

struct divisor_query {
  nat x;
  rational alpha;  // range exponent; values above 1/2 are allowed (see prop1_L_exponent)
  rational c1 = make_rat(1, 2);
  rational c2 = make_rat(1);
  divisor_side side = divisor_side::below;
  unsigned long budget = default_scan_budget;
  std::optional<nat> threshold;  // early exit once remainder <= threshold
  // when set, overrides the (alpha, c1, c2)-derived range
  std::optional<scan_range> explicit_range;
};

struct divisor_result {
  nat a;
  nat quotient;   // below: x = quotient*a + remainder; above: quotient*a - x = remainder
  nat remainder;  // in [0, a)
  nat scanned;
  bool exhaustive;  // true iff the full range was scanned
};

// [ceil(c1 x^alpha), floor(c2 x^alpha)]
scan_range divisor_range(const divisor_query& q);

// ascending scan; minimal remainder, ties to the smallest a
divisor_result best_almost_divisor(const divisor_query& q);

// same scan, but only candidates with accept(a, remainder) compete;
// nullopt when nothing was accepted
std::optional<divisor_result> best_almost_divisor_if(
    const divisor_query& q, const std::function<bool(const nat&, const nat&)>& accept);

struct exponent_pair {
  rational p, q;
  std::string label;
};

// 0 <= p <= 1/2 <= q <= 1
bool pair_valid(const exponent_pair& e);
void require_valid(const exponent_pair& e);

struct prop1_bound {
  rational exponent;
  bool alpha_above_half;  // warning only; the formula is still evaluated
};

// alpha (q - p)/(1 + p) + p/(1 + p) + eps
prop1_bound prop1_L_exponent(const rational& alpha, const exponent_pair& e,
                             const rational& eps);

rational phi_star(const exponent_pair& e);    // (1 + p + q) / (2 + p + q)
rational theta_star(const exponent_pair& e);  // phi* / 2

exponent_pair process_A(const exponent_pair& e);  // (p/(2p+2), 1/2 + q/(2p+2))
exponent_pair process_B(const exponent_pair& e);  // (q - 1/2, p + 1/2)

exponent_pair trivial_pair();  // (0, 1)
exponent_pair huxley_pair();   // (32/205, 1/2 + 32/205), epsilon carried by callers
const std::vector<exponent_pair>& registered_pairs();
// registry lookup by label, or "p,q" with rational coordinates
exponent_pair parse_pair(const std::string& text);

enum class pair_objective { min_p_plus_q, min_theta_star };

struct optimized_pair {
  exponent_pair pair;
  std::string word;  // derivation, e.g. "AB(0,1)" (rightmost applied first)
};

// exhaustive A/B-word search up to max_depth from (0,1) and every
// registered pair
optimized_pair optimize_pair(int max_depth, pair_objective objective);

}  // namespace asq
