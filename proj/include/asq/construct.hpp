#pragma once

// The five constructive routes to an almost square of type 2 near x, all
// built on the difference-of-squares identity
//   (G^2 - g^2)(H^2 - h^2) = (G-g)(G+g)(H-h)(H+h)
// with GH chosen slightly above sqrt(x) and (g, h) carving the excess
// T = (GH)^2 - x down to a small residue.

#include <utility>
#include <vector>

#include "asq/almost_square.hpp"
#include "asq/arith.hpp"
#include "asq/divisor.hpp"

namespace asq {

enum class method { i, ii, iii, iv, v };

std::string method_name(method m);
method parse_method(const std::string& text);

struct trace {
  method m;
  nat G, H, g, h;  // method i records the type-1 builder's (G, g); H = h = 0
  nat target_T;    // (G*H)^2 - x for methods ii..v; 0 for method i
  int retries = 0;
  // auxiliary parameters as (name, exact text) pairs: A, k, phi, pair, eps, ...
  std::vector<std::pair<std::string, std::string>> notes;
};

struct construction_result {
  nat x;
  type2_witness witness;
  trace tr;
  nat abs_error;                // |x - witness.n|
  rational predicted_exponent;  // 5/8, 9/16, 17/32, 3/4 - 3 phi/8, 1/2 + eps/8
};

// nearest-type-1 builder: G = ceil_sqrt(y), g = round(sqrt(G^2 - y)),
// witness n = (G-g)(G+g); |n - y| <= 2 sqrt(2 sqrt(y) + 1) + 1
struct type1_build {
  type1_witness w;
  nat g, G;
};
type1_build type1_near(const nat& y);

// greedy two-square approximation with both squares positive:
// |X - g^2 - h^2| <= 4 X^(1/4) + 4 for X >= 16
struct two_square {
  nat g, h;
};
two_square two_square_approx(const nat& big_x);

// seed factors with G <= H, G*H just above sqrt(x):
// target y = isqrt(x) + 1 + A*floor(x^(1/8)), doubling A until (GH)^2 > x
struct seed_pair {
  nat G, H;
  nat y;       // the type-1 target actually used
  nat a_used;  // final offset multiplier
  int doublings = 0;
};
seed_pair seed_GH_quarter(const nat& x, const nat& offset_a);

// multiple m = G*H of a = floor(y^(1-phi)) with m - y in [a+1, 2a]
struct embed_pair {
  nat G, H;
};
embed_pair trivial_embed(const nat& y, const rational& phi);

construction_result construct_i(const nat& x, long k = 1);
construction_result construct_ii(const nat& x);
construction_result construct_iii(const nat& x);
construction_result construct_iv(const nat& x, const rational& phi);
construction_result construct_v(const nat& x, const exponent_pair& pr, const rational& eps);

// window exponent the method's witness is designed for (theta of the
// almost-square definition, not the interval exponent)
rational method_theta(method m, const rational& phi, const exponent_pair& pr,
                      const rational& eps);

}  // namespace asq
