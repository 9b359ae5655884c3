#include "asq/divisor.hpp"

#include <deque>
#include <set>
#include <utility>

namespace asq {

namespace {

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

nat remainder_for(const divisor_query& q, const nat& a) {
  nat r;
  mpz_mod(r.get_mpz_t(), q.x.get_mpz_t(), a.get_mpz_t());
  if (q.side == divisor_side::below) return r;
  if (r == 0) return r;
  return a - r;
}

divisor_result finish(const divisor_query& q, const nat& a, const nat& r, const nat& scanned,
                      bool exhaustive) {
  nat quotient;
  if (q.side == divisor_side::below) {
    quotient = (q.x - r) / a;
  } else {
    quotient = (q.x + r) / a;
  }
  return {a, quotient, r, scanned, exhaustive};
}

}  // namespace

scan_range divisor_range(const divisor_query& q) {
  require(q.alpha > 0, errc::domain, "alpha must be positive");
  require(q.c1 > 0 && q.c1 < q.c2 && q.c2 <= 1, errc::domain,
          "need 0 < c1 < c2 <= 1");
  if (q.explicit_range) return *q.explicit_range;
  return {ceil_scaled_pow(q.c1, q.x, q.alpha), floor_scaled_pow(q.c2, q.x, q.alpha)};
}

std::optional<divisor_result> best_almost_divisor_if(
    const divisor_query& q, const std::function<bool(const nat&, const nat&)>& accept) {
  require(q.budget >= 1, errc::domain, "budget must be >= 1");
  scan_range range = divisor_range(q);
  require(range.lo >= 1, errc::domain, "range must start at 1 or above");
  require(range.lo <= range.hi, errc::empty_range, "empty almost-divisor range");

  std::optional<nat> best_a;
  nat best_r;
  nat scanned = 0;
  bool exhausted = false;
  for (nat a = range.lo; a <= range.hi; ++a) {
    ++scanned;
    nat r = remainder_for(q, a);
    bool accepted = !accept || accept(a, r);
    if (accepted && (!best_a || r < best_r)) {
      best_a = a;
      best_r = r;
    }
    if (a == range.hi) exhausted = true;
    if (accepted && q.threshold && r <= *q.threshold) break;
    if (scanned >= q.budget) break;
  }
  if (!best_a) return std::nullopt;
  return finish(q, *best_a, best_r, scanned, exhausted);
}

divisor_result best_almost_divisor(const divisor_query& q) {
  auto res = best_almost_divisor_if(q, nullptr);
  // the unfiltered scan always accepts at least one candidate
  return *res;
}

bool pair_valid(const exponent_pair& e) {
  return e.p >= 0 && e.p * 2 <= 1 && e.q * 2 >= 1 && e.q <= 1;
}

void require_valid(const exponent_pair& e) {
  require(pair_valid(e), errc::invalid_pair,
          "not an exponent pair: (" + str(e.p) + ", " + str(e.q) + ")");
}

prop1_bound prop1_L_exponent(const rational& alpha, const exponent_pair& e,
                             const rational& eps) {
  require_valid(e);
  require(alpha > 0, errc::domain, "alpha must be positive");
  require(eps >= 0, errc::domain, "epsilon must be >= 0");
  rational one_plus_p = e.p + 1;
  prop1_bound out;
  out.exponent = alpha * (e.q - e.p) / one_plus_p + e.p / one_plus_p + eps;
  out.alpha_above_half = alpha * 2 > 1;
  return out;
}

rational phi_star(const exponent_pair& e) {
  require_valid(e);
  rational s = e.p + e.q;
  return (s + 1) / (s + 2);
}

rational theta_star(const exponent_pair& e) { return phi_star(e) / 2; }

exponent_pair process_A(const exponent_pair& e) {
  require_valid(e);
  rational den = e.p * 2 + 2;
  exponent_pair out{e.p / den, make_rat(1, 2) + e.q / den, ""};
  require(pair_valid(out), errc::invalid_pair, "A-process produced an invalid pair");
  return out;
}

exponent_pair process_B(const exponent_pair& e) {
  require_valid(e);
  exponent_pair out{e.q - make_rat(1, 2), e.p + make_rat(1, 2), ""};
  require(pair_valid(out), errc::invalid_pair, "B-process produced an invalid pair");
  return out;
}

exponent_pair trivial_pair() { return {make_rat(0), make_rat(1), "(0,1)"}; }

exponent_pair huxley_pair() {
  return {make_rat(32, 205), make_rat(1, 2) + make_rat(32, 205), "huxley"};
}

const std::vector<exponent_pair>& registered_pairs() {
  static const std::vector<exponent_pair> pairs = {trivial_pair(), huxley_pair()};
  return pairs;
}

exponent_pair parse_pair(const std::string& text) {
  for (const exponent_pair& e : registered_pairs()) {
    if (text == e.label) return e;
  }
  auto comma = text.find(',');
  require(comma != std::string::npos, errc::domain,
          "pair must be a registered label or \"p,q\": " + text);
  exponent_pair e{parse_rational(text.substr(0, comma)),
                  parse_rational(text.substr(comma + 1)), text};
  require_valid(e);
  return e;
}

optimized_pair optimize_pair(int max_depth, pair_objective objective) {
  require(max_depth >= 0 && max_depth <= 20, errc::domain, "max_depth must be in [0, 20]");

  auto key = [objective](const exponent_pair& e) -> rational {
    return objective == pair_objective::min_p_plus_q ? e.p + e.q : theta_star(e);
  };

  struct node {
    exponent_pair pr;
    std::string word;  // transforms applied so far, leftmost = latest
    std::string seed;
    int depth;
  };

  auto render = [](const node& s) {
    return s.word.empty() ? s.seed : s.word + "(" + s.seed + ")";
  };

  std::deque<node> queue;
  for (const exponent_pair& e : registered_pairs()) {
    queue.push_back({e, "", e.label, 0});
  }

  std::set<std::pair<rational, rational>> seen;
  std::optional<node> best;
  rational best_key;
  while (!queue.empty()) {
    node cur = queue.front();
    queue.pop_front();
    if (!seen.insert({cur.pr.p, cur.pr.q}).second) continue;
    rational k = key(cur.pr);
    if (!best || k < best_key ||
        (k == best_key && render(cur) < render(*best))) {
      best = cur;
      best_key = k;
    }
    if (cur.depth >= max_depth) continue;
    queue.push_back({process_A(cur.pr), "A" + cur.word, cur.seed, cur.depth + 1});
    queue.push_back({process_B(cur.pr), "B" + cur.word, cur.seed, cur.depth + 1});
  }
  exponent_pair out = best->pr;
  out.label = render(*best);
  return {out, out.label};
}

}  // namespace asq
