#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "asq/expsum.hpp"

using namespace asq;

namespace {

// naive oracle: evaluate l*x/a in 512-bit floats (~154 digits), reduce the
// fractional part there, and only then drop to double. Independent of the
// exact-integer reduction path under test.
std::complex<double> naive_inner_sum(const nat& l, const nat& x, const nat& lo, const nat& hi) {
  std::complex<double> acc{0.0, 0.0};
  mpf_class lx(0, 512);
  lx = mpf_class(nat(l * x), 512);
  for (nat a = lo; a <= hi; ++a) {
    mpf_class q(0, 512);
    q = lx / mpf_class(a, 512);
    mpf_class fl(0, 512);
    mpf_floor(fl.get_mpf_t(), q.get_mpf_t());
    double frac = mpf_class(q - fl).get_d();
    acc += std::complex<double>(std::cos(2 * M_PI * frac), std::sin(2 * M_PI * frac));
  }
  return acc;
}

nat pow10(int k) {
  nat out = 1;
  for (int i = 0; i < k; ++i) out *= 10;
  return out;
}

}  // namespace

TEST_CASE("inner_sum single terms") {
  // a | l x gives phase 0
  CHECK(inner_sum(nat(3), nat(8), nat(4), nat(4)).real() == doctest::Approx(1.0));
  CHECK(inner_sum(nat(3), nat(8), nat(4), nat(4)).imag() == doctest::Approx(0.0));
  // 10 mod 4 = 2, phase 1/2 -> e(pi i) = -1
  std::complex<double> v = inner_sum(nat(1), nat(10), nat(4), nat(4));
  CHECK(v.real() == doctest::Approx(-1.0));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("inner_sum magnitude bound and budget") {
  std::complex<double> v = inner_sum(nat(1), pow10(6), nat(500), nat(1000));
  CHECK(std::abs(v) <= 501.0 + 1e-9);
  CHECK_THROWS_AS(inner_sum(nat(1), nat(10), nat(1), nat(1000), 100), error);
  CHECK_THROWS_AS(inner_sum(nat(1), nat(10), nat(5), nat(4)), error);
  CHECK_THROWS_AS(inner_sum(nat(0), nat(10), nat(4), nat(5)), error);
}

TEST_CASE("inner_sum matches the high-precision oracle") {
  std::complex<double> mine = inner_sum(nat(1), pow10(6), nat(500), nat(1000));
  std::complex<double> oracle = naive_inner_sum(nat(1), pow10(6), nat(500), nat(1000));
  CHECK(std::abs(mine - oracle) / std::abs(oracle) < 1e-9);

  std::mt19937_64 rng(2718);
  for (int i = 0; i < 40; ++i) {
    nat x = pow10(12 + static_cast<int>(rng() % 9));
    x += nat(static_cast<unsigned long>(rng() % 1000000000ULL));
    nat l = 1 + rng() % 50;
    nat lo = 100 + rng() % 5000;
    nat hi = lo + 50 + rng() % 500;
    std::complex<double> a = inner_sum(l, x, lo, hi);
    std::complex<double> b = naive_inner_sum(l, x, lo, hi);
    REQUIRE(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("phase periodicity: x -> x + a t leaves a single term unchanged") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    nat a = 2 + rng() % 100000;
    nat x = nat(static_cast<unsigned long>(rng() % 1000000000000ULL));
    nat t = rng() % 1000;
    nat l = 1 + rng() % 20;
    std::complex<double> base = inner_sum(l, x, a, a);
    std::complex<double> shifted = inner_sum(l, nat(x + a * t), a, a);
    REQUIRE(std::abs(base - shifted) < 1e-12);
  }
}

TEST_CASE("S_sum on a single-point range gives K + 1") {
  // every |term| is 1
  expsum_report rep = S_sum(nat(5), pow10(6), nat(777), nat(777));
  CHECK(rep.s_value == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("S_sum triangle inequality and two-term check") {
  expsum_report rep = S_sum(nat(1), pow10(6), nat(500), nat(1000));
  // naive two-l evaluation
  double direct = std::abs(naive_inner_sum(nat(1), pow10(6), nat(500), nat(1000))) +
                  std::abs(naive_inner_sum(nat(2), pow10(6), nat(500), nat(1000)));
  CHECK(rep.s_value == doctest::Approx(direct).epsilon(1e-9));
  CHECK(rep.s_value <= 2.0 * 501.0);
  CHECK(rep.predicted > 0.0);
  CHECK(rep.ratio == doctest::Approx(rep.s_value / rep.predicted));

  // adding one term moves S by at most K + 1
  expsum_report wider = S_sum(nat(1), pow10(6), nat(500), nat(1001));
  CHECK(std::abs(wider.s_value - rep.s_value) <= 2.0 + 1e-9);
}

TEST_CASE("points_from_quotients stores reduced fractions") {
  point_set pts = points_from_quotients(pow10(6) + 7, nat(500), nat(1000));
  CHECK(pts.size() == 501);
  for (const frac_point& p : pts.points) {
    CHECK(p.num < p.den);
  }
}

TEST_CASE("et_check: equally spaced points satisfy hypothesis and conclusion") {
  point_set pts;
  const unsigned long big_j = 64;
  for (unsigned long j = 0; j < big_j; ++j) {
    pts.points.push_back({nat(j), nat(big_j)});
  }
  std::vector<arc> arcs;
  for (int i = 0; i < 16; ++i) {
    arcs.push_back({make_rat(i, 17), make_rat(4, big_j)});
  }
  et_report rep = et_check(pts, big_j - 1, arcs);
  CHECK(rep.hypothesis_ok);  // geometric sums all vanish
  CHECK(!rep.conclusion_violated());
  REQUIRE(rep.worst_arc.has_value());
  // every arc of length 4/J holds at least 2 points
  CHECK(rep.worst_arc->count >= 2);
  CHECK(rep.worst_arc->required == make_rat(2));
}

TEST_CASE("et_check: all points at zero fail the hypothesis") {
  point_set pts;
  for (int j = 0; j < 50; ++j) pts.points.push_back({nat(0), nat(1)});
  et_report rep = et_check(pts, 1, {});
  CHECK(!rep.hypothesis_ok);
  CHECK(rep.lhs_sums.size() == 1);
  CHECK(rep.lhs_sums[0] == doctest::Approx(50.0));
  CHECK(!rep.conclusion_violated());
}

TEST_CASE("et_check: divisor quotient points over random arcs") {
  // the [500, 1000] range only sustains M = 2, whose arcs (length >= 4/3)
  // cannot fit in [0,1]; the hypothesis grid still behaves
  point_set narrow = points_from_quotients(pow10(6) + 7, nat(500), nat(1000));
  unsigned long best_narrow = 0;
  for (unsigned long m = 1; m <= 8; ++m) {
    if (et_check(narrow, m, {}).hypothesis_ok) best_narrow = m;
  }
  CHECK(best_narrow == 2);

  // a wider range distributes the quotients well enough for usable arcs
  point_set pts = points_from_quotients(pow10(6) + 7, nat(2000), nat(4000));
  unsigned long best_m = 0;
  for (unsigned long m = 1; m <= 16; ++m) {
    et_report probe = et_check(pts, m, {});
    if (probe.hypothesis_ok) best_m = m;
  }
  REQUIRE(best_m >= 3);  // arcs of length 4/(M+1) must fit inside [0,1]

  std::mt19937_64 rng(99);
  std::vector<arc> arcs;
  for (int i = 0; i < 1000; ++i) {
    rational s = make_rat(static_cast<long>(rng() % 100000), 100000);
    arcs.push_back({s, make_rat(4, best_m + 1)});
  }
  et_report rep = et_check(pts, best_m, arcs);
  CHECK(rep.hypothesis_ok);
  CHECK(!rep.conclusion_violated());
  REQUIRE(rep.worst_arc.has_value());
  CHECK(rational(rep.worst_arc->count) >= rep.worst_arc->required);
}

TEST_CASE("et_check rejects bad arcs") {
  point_set pts;
  pts.points.push_back({nat(0), nat(2)});
  CHECK_THROWS_AS(et_check(pts, 3, {{make_rat(0), make_rat(1, 2)}}), error);  // < 4/(M+1) = 1
  CHECK_THROWS_AS(et_check(pts, 3, {{make_rat(0), make_rat(5, 4)}}), error);  // > 1
  et_report ok = et_check(pts, 3, {{make_rat(1, 3), make_rat(1)}});
  CHECK(ok.worst_arc->count == 1);
}
