#include "asq/expsum.hpp"

#include <algorithm>
#include <cmath>

namespace asq {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

void check_range(const nat& lo, const nat& hi, unsigned long budget) {
  require(lo >= 1, errc::domain, "range must start at 1 or above");
  require(lo <= hi, errc::domain, "range must be nonempty");
  require(nat(hi - lo) < budget, errc::scan_budget, "range exceeds the scan budget");
}

std::complex<double> unit_phase(const nat& num, const nat& den) {
  double p = num.get_d() / den.get_d();
  return {std::cos(two_pi * p), std::sin(two_pi * p)};
}

// deterministic pairwise reduction over term(i) for i in [0, count)
template <typename Term>
std::complex<double> tree_sum(unsigned long offset, unsigned long count, const Term& term) {
  if (count <= 16) {
    std::complex<double> acc{0.0, 0.0};
    for (unsigned long i = 0; i < count; ++i) acc += term(offset + i);
    return acc;
  }
  unsigned long half = count / 2;
  return tree_sum(offset, half, term) + tree_sum(offset + half, count - half, term);
}

rational mod_one(const rational& v) {
  nat f;
  mpz_fdiv_q(f.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return v - rational(f);
}

}  // namespace

point_set points_from_quotients(const nat& x, const nat& lo, const nat& hi,
                                unsigned long budget) {
  check_range(lo, hi, budget);
  point_set out;
  for (nat a = lo; a <= hi; ++a) {
    nat r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), a.get_mpz_t());
    out.points.push_back({r, a});
  }
  return out;
}

std::complex<double> inner_sum(const nat& l, const nat& x, const nat& lo, const nat& hi,
                               unsigned long budget) {
  require(l >= 1, errc::domain, "l must be >= 1");
  check_range(lo, hi, budget);
  nat lx = l * x;
  unsigned long count = nat(hi - lo + 1).get_ui();
  auto term = [&](unsigned long i) {
    nat a = lo + i;
    nat r;
    mpz_mod(r.get_mpz_t(), lx.get_mpz_t(), a.get_mpz_t());
    return unit_phase(r, a);
  };
  return tree_sum(0, count, term);
}

expsum_report S_sum(const nat& big_k, const nat& x, const nat& lo, const nat& hi,
                    const exponent_pair& pr, unsigned long budget) {
  require(big_k >= 1, errc::domain, "K must be >= 1");
  require_valid(pr);
  check_range(lo, hi, budget);

  expsum_report rep;
  rep.x = x;
  rep.lo = lo;
  rep.hi = hi;
  rep.big_k = big_k;
  rep.pair = pr;
  for (nat l = big_k; l <= 2 * big_k; ++l) {
    rep.s_value += std::abs(inner_sum(l, x, lo, hi, budget));
  }

  double lnx = ln(x);
  double alpha = lnx > 0 ? ln(hi) / lnx : 0.0;
  double p = as_double(pr.p), q = as_double(pr.q);
  double exponent = p - 2.0 * alpha * p + alpha * q;
  rep.predicted = std::pow(2.0 * big_k.get_d(), 1.0 + p) * std::exp(exponent * lnx);
  rep.ratio = rep.predicted > 0 ? rep.s_value / rep.predicted : 0.0;
  return rep;
}

bool et_report::conclusion_violated() const {
  return hypothesis_ok && worst_arc && rational(worst_arc->count) < worst_arc->required;
}

et_report et_check(const point_set& pts, unsigned long big_m, const std::vector<arc>& arcs) {
  const std::size_t j_count = pts.size();
  require(j_count >= 1, errc::domain, "point set must be nonempty");
  require(big_m >= 1, errc::domain, "M must be >= 1");
  for (const frac_point& p : pts.points) {
    require(p.den >= 1 && p.num < p.den, errc::domain, "points must be reduced into [0, 1)");
  }

  et_report rep;
  rep.big_m = big_m;

  double total = 0.0;
  for (unsigned long l = 1; l <= big_m; ++l) {
    auto term = [&](unsigned long i) {
      const frac_point& p = pts.points[i];
      nat r;
      nat ln_num = l * p.num;
      mpz_mod(r.get_mpz_t(), ln_num.get_mpz_t(), p.den.get_mpz_t());
      return unit_phase(r, p.den);
    };
    double mag = std::abs(tree_sum(0, j_count, term));
    rep.lhs_sums.push_back(mag);
    total += mag;
  }
  rep.hypothesis_ok = total <= static_cast<double>(j_count) / 10.0;

  if (arcs.empty()) return rep;

  std::vector<rational> sorted;
  sorted.reserve(j_count);
  for (const frac_point& p : pts.points) {
    rational v(p.num);
    v /= rational(p.den);
    sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());

  auto count_below = [&](const rational& v) -> long {
    return std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
  };

  const rational min_len = make_rat(4) / make_rat(static_cast<long>(big_m) + 1);
  std::optional<rational> worst_margin;
  for (const arc& a : arcs) {
    require(a.length >= min_len, errc::arc_too_short,
            "arc too short: length must be at least 4/(M+1)");
    require(a.length <= 1, errc::domain, "arc length must be at most 1");
    rational s = mod_one(a.start);
    rational e = s + a.length;
    long count = 0;
    if (e <= 1) {
      count = count_below(e) - count_below(s);
    } else {
      count = static_cast<long>(j_count) - count_below(s) + count_below(e - 1);
    }
    rational required = rational(static_cast<long>(j_count)) * a.length / 2;
    rational margin = rational(count) - required;
    if (!worst_margin || margin < *worst_margin) {
      worst_margin = margin;
      rep.worst_arc = arc_count{a.start, a.length, count, required};
    }
  }
  return rep;
}

}  // namespace asq
