#include "asq/construct.hpp"

namespace asq {

namespace {

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

nat abs_diff(const nat& a, const nat& b) { return a >= b ? nat(a - b) : nat(b - a); }

// Witness from the four factors (G-g)(G+g)(H-h)(H+h). The cross products
// decide which side plays d: Definition 2 needs a2 <= b2, i.e. the smaller
// cross product is a2 = d1 e2.
type2_witness witness_from_offsets(const nat& G, const nat& H, const nat& g, const nat& h) {
  require(g >= 1 && g < G && h >= 1 && h < H, errc::domain, "offsets must satisfy 1 <= g < G, 1 <= h < H");
  nat f1 = G - g, f2 = G + g, f3 = H - h, f4 = H + h;
  nat n = f1 * f2 * f3 * f4;
  nat cross_gh = f1 * f4;  // (G-g)(H+h)
  nat cross_hg = f2 * f3;  // (G+g)(H-h)
  type2_witness w;
  w.n = n;
  w.a1 = f1 * f3;
  w.b1 = f2 * f4;
  if (cross_gh <= cross_hg) {
    w.a2 = cross_gh;
    w.b2 = cross_hg;
    w.d1 = f1;
    w.d2 = f2;
    w.e1 = f3;
    w.e2 = f4;
  } else {
    w.a2 = cross_hg;
    w.b2 = cross_gh;
    w.d1 = f3;
    w.d2 = f4;
    w.e1 = f1;
    w.e2 = f2;
  }
  validate(w);
  return w;
}

// shared greedy carving for methods iv and v: g as large as g^2 H^2 <= T,
// then h near sqrt((T - g^2 H^2)/G^2), final h picked by residual error
struct carve_out {
  nat g, h, n;
};

carve_out greedy_gh(const nat& x, const nat& G, const nat& H, const nat& T) {
  nat HH = H * H;
  nat GG = G * G;
  require(T >= HH, errc::domain, "target too small for a positive g step");
  nat g = isqrt(nat(T / HH));
  if (g >= G) g = G - 1;  // cannot happen for T < (GH)^2, kept as a hard stop
  nat rem = T - g * g * HH;
  nat h = isqrt(nat(rem / GG));
  if (h < 1) h = 1;
  if (h > H - 1) h = H - 1;

  nat left = GG - g * g;
  carve_out best;
  bool have = false;
  for (const nat& cand : {h, nat(h + 1)}) {
    if (cand < 1 || cand > H - 1) continue;
    nat n = left * (HH - cand * cand);
    if (!have || abs_diff(x, n) < abs_diff(x, best.n)) {
      best = {g, cand, n};
      have = true;
    }
  }
  require(have, errc::domain, "no admissible h offset");
  return best;
}

std::string pair_text(const exponent_pair& e) {
  return "(" + str(e.p) + "," + str(e.q) + ")";
}

}  // namespace

std::string method_name(method m) {
  switch (m) {
    case method::i: return "i";
    case method::ii: return "ii";
    case method::iii: return "iii";
    case method::iv: return "iv";
    case method::v: return "v";
  }
  return "?";
}

method parse_method(const std::string& text) {
  if (text == "i") return method::i;
  if (text == "ii") return method::ii;
  if (text == "iii") return method::iii;
  if (text == "iv") return method::iv;
  if (text == "v") return method::v;
  throw error(errc::domain, "unknown method: " + text);
}

type1_build type1_near(const nat& y) {
  require(y >= 16, errc::domain, "type1_near needs y >= 16");
  nat G = ceil_sqrt(y);
  nat d = G * G - y;
  nat g = isqrt(d);
  // round to the nearest square: d - g^2 vs (g+1)^2 - d, ties down
  if (d - g * g > (g + 1) * (g + 1) - d) ++g;
  nat a = G - g, b = G + g;
  return {type1_witness{a * b, a, b}, g, G};
}

two_square two_square_approx(const nat& big_x) {
  require(big_x >= 16, errc::domain, "two_square_approx needs X >= 16");
  nat g = isqrt(big_x);
  if (g * g == big_x) --g;  // a perfect square would leave r = 0 and h = 0
  nat r = big_x - g * g;
  nat h = isqrt(r);
  if (h == 0) h = 1;
  return {g, h};
}

seed_pair seed_GH_quarter(const nat& x, const nat& offset_a) {
  require(x >= 100000000, errc::domain, "seed_GH_quarter needs x >= 10^8");
  require(offset_a >= 1, errc::domain, "offset multiplier must be >= 1");
  nat root = isqrt(x);
  nat eighth = isqrt(isqrt(root));  // floor(x^(1/8))
  if (eighth < 1) eighth = 1;
  nat a = offset_a;
  for (int doublings = 0; doublings <= 6; ++doublings) {
    nat y = root + 1 + a * eighth;
    type1_build tb = type1_near(y);
    nat prod = tb.w.a * tb.w.b;
    if (prod * prod > x) {
      return {tb.w.a, tb.w.b, y, a, doublings};
    }
    a *= 2;
  }
  throw error(errc::seed_failed, "seed failed: G*H stayed at or below sqrt(x)");
}

embed_pair trivial_embed(const nat& y, const rational& phi) {
  require(phi * 2 >= 1 && phi < 1, errc::domain, "trivial_embed needs 1/2 <= phi < 1");
  require(y >= 100, errc::domain, "trivial_embed needs y >= 100");
  nat a = floor_scaled_pow(make_rat(1), y, rational(1) - phi);
  require(a >= 1, errc::domain, "embedding divisor collapsed to zero");
  nat target = y + a + 1;
  nat q;
  mpz_cdiv_q(q.get_mpz_t(), target.get_mpz_t(), a.get_mpz_t());
  return {a, q};
}

construction_result construct_i(const nat& x, long k) {
  require(x >= 100000000, errc::domain, "construct_i needs x >= 10^8");
  require(k >= 1 && k <= 10, errc::domain, "construct_i needs 1 <= k <= 10");
  nat root = isqrt(x);
  nat quarter = isqrt(root);
  nat y = root - 2 * k * quarter;

  type1_build tb;
  int retries = 0;
  for (;; ++retries) {
    tb = type1_near(y);
    if (tb.w.a != tb.w.b) break;
    require(retries < 5, errc::degenerate_construction,
            "degenerate construction: d = e persisted through retries");
    --y;
  }

  nat d = tb.w.a, e = tb.w.b;  // d < e
  nat dk = d + 2 * k, ek = e + 2 * k;
  type2_witness w;
  w.a1 = d * e;
  w.b1 = dk * ek;
  w.a2 = d * ek;
  w.b2 = e * dk;
  w.n = w.a1 * w.b1;
  w.d1 = d;
  w.d2 = dk;
  w.e1 = e;
  w.e2 = ek;
  validate(w);

  construction_result out;
  out.x = x;
  out.witness = w;
  out.tr = trace{method::i, tb.G, nat(0), tb.g, nat(0), nat(0), retries,
                 {{"k", std::to_string(k)}, {"y", str(y)}}};
  out.abs_error = abs_diff(x, w.n);
  out.predicted_exponent = make_rat(5, 8);
  return out;
}

construction_result construct_ii(const nat& x) {
  require(x >= 100000000, errc::domain, "construct_ii needs x >= 10^8");
  nat a = 4;
  seed_pair seed;
  nat T;
  int retries = 0;
  for (;; ++retries) {
    seed = seed_GH_quarter(x, a);
    nat prod = seed.G * seed.H;
    T = prod * prod - x;
    // g >= 1 needs T >= G^2 + (H^2 - 1)
    if (T >= seed.G * seed.G + seed.H * seed.H - 1) break;
    require(retries < 6, errc::seed_failed, "seed failed: target never cleared G^2 + H^2 - 1");
    a = seed.a_used * 2;
  }

  nat G = seed.G, H = seed.H;
  nat den = H * H - 1;
  nat g0 = isqrt(nat((T - G * G) / den));
  nat n, g;
  bool have = false;
  for (const nat& cand : {g0, nat(g0 + 1)}) {
    if (cand < 1 || cand >= G) continue;
    nat val = (G * G - cand * cand) * den;
    if (!have || abs_diff(x, val) < abs_diff(x, n)) {
      g = cand;
      n = val;
      have = true;
    }
  }
  require(have, errc::seed_failed, "no admissible g offset");

  construction_result out;
  out.x = x;
  out.witness = witness_from_offsets(G, H, g, nat(1));
  out.tr = trace{method::ii, G, H, g, nat(1), T, retries + seed.doublings,
                 {{"A", str(seed.a_used)}, {"y", str(seed.y)}}};
  out.abs_error = abs_diff(x, out.witness.n);
  out.predicted_exponent = make_rat(9, 16);
  return out;
}

construction_result construct_iii(const nat& x) {
  require(x >= 100000000, errc::domain, "construct_iii needs x >= 10^8");
  nat a = 4;
  int retries = 0;
  for (;; ++retries) {
    seed_pair seed = seed_GH_quarter(x, a);
    nat G = seed.G, H = seed.H;
    nat prod = G * H;
    nat T = prod * prod - x;
    nat quotient = T / (G * G);
    if (quotient >= 16) {
      two_square sq = two_square_approx(quotient);
      if (sq.g < G && sq.h < H) {
        construction_result out;
        out.x = x;
        out.witness = witness_from_offsets(G, H, sq.g, sq.h);
        out.tr = trace{method::iii, G, H, sq.g, sq.h, T, retries + seed.doublings,
                       {{"A", str(seed.a_used)}, {"y", str(seed.y)}, {"Q", str(quotient)}}};
        out.abs_error = abs_diff(x, out.witness.n);
        out.predicted_exponent = make_rat(17, 32);
        return out;
      }
    }
    require(retries < 6, errc::seed_failed, "seed failed: no admissible two-square offsets");
    a = seed.a_used * 2;
  }
}

construction_result construct_iv(const nat& x, const rational& phi) {
  require(x >= nat("1000000000000"), errc::domain, "construct_iv needs x >= 10^12");
  require(phi * 2 > 1 && phi * 3 < 2, errc::domain, "construct_iv needs 1/2 < phi < 2/3");
  nat y = isqrt(x) + 1;
  embed_pair emb = trivial_embed(y, phi);
  nat G = emb.G, H = emb.H;
  nat m = G * H;
  nat T = m * m - x;
  int advances = 0;
  while (T < H * H) {
    require(advances < 5, errc::embed_failed, "embed failed: target never cleared H^2");
    ++advances;
    m += G;  // next multiple of a
    H += 1;
    T = m * m - x;
  }

  carve_out carved = greedy_gh(x, G, H, T);
  construction_result out;
  out.x = x;
  out.witness = witness_from_offsets(G, H, carved.g, carved.h);
  out.tr = trace{method::iv, G, H, carved.g, carved.h, T, advances, {{"phi", str(phi)}}};
  out.abs_error = abs_diff(x, out.witness.n);
  out.predicted_exponent = make_rat(3, 4) - phi * 3 / 8;
  return out;
}

construction_result construct_v(const nat& x, const exponent_pair& pr, const rational& eps) {
  require(x >= nat("1000000000000"), errc::domain, "construct_v needs x >= 10^12");
  require_valid(pr);
  require(eps > 0, errc::domain, "construct_v needs eps > 0");

  rational phi = phi_star(pr);
  nat y = isqrt(x) + 1;
  rational alpha = rational(1) - phi;
  rational rho = prop1_L_exponent(alpha, pr, eps).exponent;
  nat bound_l = ceil_scaled_pow(make_rat(4), y, rho);

  divisor_query query;
  query.x = y + 1;  // first multiple strictly above y
  query.alpha = alpha;
  query.c1 = make_rat(1, 2);
  query.c2 = make_rat(1);
  query.side = divisor_side::above;
  query.explicit_range = scan_range{ceil_scaled_pow(make_rat(1, 2), y, alpha),
                                    floor_scaled_pow(make_rat(1), y, alpha)};

  // viable: the multiple m = y + 1 + r leaves T = m^2 - x >= H^2 so g >= 1
  auto viable = [&](const nat& a, const nat& r) {
    nat m = y + 1 + r;
    nat h = m / a;
    return m * m - x >= h * h;
  };
  auto found = best_almost_divisor_if(query, viable);
  if (!found) {
    divisor_result fallback = best_almost_divisor(query);
    throw error(errc::no_viable_divisor,
                "no viable almost divisor within bound: best remainder " +
                    str(nat(fallback.remainder + 1)) + " is never viable, bound " + str(bound_l));
  }
  nat gap = found->remainder + 1;  // m - y
  if (gap > bound_l) {
    throw error(errc::no_viable_divisor,
                "no viable almost divisor within bound: best viable m - y = " + str(gap) +
                    " exceeds L = " + str(bound_l));
  }

  nat G = found->a;
  nat m = y + 1 + found->remainder;
  nat H = m / G;
  nat T = m * m - x;
  carve_out carved = greedy_gh(x, G, H, T);

  construction_result out;
  out.x = x;
  out.witness = witness_from_offsets(G, H, carved.g, carved.h);
  out.tr = trace{method::v,
                 G,
                 H,
                 carved.g,
                 carved.h,
                 T,
                 0,
                 {{"pair", pair_text(pr)},
                  {"eps", str(eps)},
                  {"phi", str(phi)},
                  {"L", str(bound_l)},
                  {"gap", str(gap)}}};
  out.abs_error = abs_diff(x, out.witness.n);
  out.predicted_exponent = make_rat(1, 2) + eps / 8;
  return out;
}

rational method_theta(method m, const rational& phi, const exponent_pair& pr,
                      const rational& eps) {
  switch (m) {
    case method::i:
      return make_rat(1, 4);
    case method::ii:
    case method::iii:
      return make_rat(5, 16);
    case method::iv:
      return make_rat(1, 2) - phi / 4;
    case method::v:
      return theta_star(pr) + eps / 2;
  }
  throw error(errc::domain, "unknown method");
}

}  // namespace asq
