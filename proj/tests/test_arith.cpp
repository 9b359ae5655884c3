#include <doctest.h>

#include <random>

#include "asq/arith.hpp"
#include "asq/error.hpp"

using namespace asq;

TEST_CASE("isqrt and ceil_sqrt on pinned values") {
  CHECK(isqrt(nat(0)) == 0);
  CHECK(isqrt(nat(99)) == 9);
  CHECK(isqrt(nat("10000000000000000")) == nat("100000000"));
  CHECK(ceil_sqrt(nat(100)) == 10);
  // 99^2 = 9801 >= 9800 > 98^2
  CHECK(ceil_sqrt(nat(9800)) == 99);
  // 101^2 = 10201 >= 10040 > 100^2
  CHECK(ceil_sqrt(nat(10040)) == 101);
}

TEST_CASE("isqrt/ceil_sqrt bracketing on random values up to 10^40") {
  std::mt19937_64 rng(20240817);
  nat top = 1;
  for (int i = 0; i < 40; ++i) top *= 10;
  for (int i = 0; i < 1000000; ++i) {
    // random bit length keeps small and huge values both covered
    int bits = 1 + static_cast<int>(rng() % 133);
    nat n = 0;
    for (int b = 0; b < bits; b += 32) {
      n <<= 32;
      n += static_cast<unsigned long>(rng() & 0xffffffffULL);
    }
    n %= top;
    nat r = isqrt(n);
    REQUIRE(r * r <= n);
    REQUIRE((r + 1) * (r + 1) > n);
    nat g = ceil_sqrt(n);
    REQUIRE(g * g >= n);
    if (g > 0) REQUIRE((g - 1) * (g - 1) < n);
  }
}

TEST_CASE("nth_root_floor brackets exactly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    nat n = nat(static_cast<unsigned long>(rng() % 1000000007ULL));
    unsigned long k = 2 + rng() % 9;
    nat r = nth_root_floor(n, k);
    nat lo, hi;
    mpz_pow_ui(lo.get_mpz_t(), r.get_mpz_t(), k);
    nat rp1 = r + 1;
    mpz_pow_ui(hi.get_mpz_t(), rp1.get_mpz_t(), k);
    REQUIRE(lo <= n);
    REQUIRE(hi > n);
  }
}

TEST_CASE("floor_pow matches the k-th root bracket") {
  CHECK(floor_pow(nat(100000000), make_rat(1, 4)) == 100);
  CHECK(floor_pow(nat(99996525), make_rat(5, 16)) == 316);
  CHECK(floor_pow(nat(12345), make_rat(0)) == 1);
  // floor(10^(12/5)) = floor(251.18...)
  CHECK(floor_pow(nat(1000000), make_rat(2, 5)) == 251);
}

TEST_CASE("scaled powers agree with their defining inequalities") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    nat x = nat(static_cast<unsigned long>(1 + rng() % 1000000000ULL));
    rational c = make_rat(1 + static_cast<long>(rng() % 9), 1 + rng() % 9);
    rational e = make_rat(static_cast<long>(rng() % 7), 1 + rng() % 9);
    unsigned long u = e.get_num().get_ui(), v = e.get_den().get_ui();
    nat xu;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    nat pv;
    mpz_pow_ui(pv.get_mpz_t(), nat(c.get_num()).get_mpz_t(), v);
    nat w = pv * xu;  // m <= c x^e iff (m c_den)^v <= w

    nat f = floor_scaled_pow(c, x, e);
    nat lhs;
    nat fq = f * c.get_den();
    mpz_pow_ui(lhs.get_mpz_t(), fq.get_mpz_t(), v);
    REQUIRE(lhs <= w);
    nat fq1 = (f + 1) * c.get_den();
    mpz_pow_ui(lhs.get_mpz_t(), fq1.get_mpz_t(), v);
    REQUIRE(lhs > w);

    nat cl = ceil_scaled_pow(c, x, e);
    nat cq = cl * c.get_den();
    mpz_pow_ui(lhs.get_mpz_t(), cq.get_mpz_t(), v);
    REQUIRE(lhs >= w);
    if (cl > 0) {
      nat cq0 = (cl - 1) * c.get_den();
      mpz_pow_ui(lhs.get_mpz_t(), cq0.get_mpz_t(), v);
      REQUIRE(lhs < w);
    }
  }
}

TEST_CASE("sqrt comparisons and shifted floor/ceil") {
  CHECK(leq_sqrt(make_rat(10), nat(100)));
  CHECK(geq_sqrt(make_rat(10), nat(100)));
  CHECK(!geq_sqrt(make_rat(99, 10), nat(100)));
  CHECK(!leq_sqrt(make_rat(101, 10), nat(100)));

  // ceil(sqrt(105) - 6) = ceil(4.246...) = 5, floor(sqrt(105) + 6) = 16
  CHECK(ceil_sqrt_plus(nat(105), make_rat(-6)) == 5);
  CHECK(floor_sqrt_plus(nat(105), make_rat(6)) == 16);
  // exact endpoints
  CHECK(ceil_sqrt_plus(nat(100), make_rat(-3)) == 7);
  CHECK(floor_sqrt_plus(nat(100), make_rat(3)) == 13);
  // negative results are allowed
  CHECK(floor_sqrt_plus(nat(4), make_rat(-5)) == -3);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    nat n = nat(static_cast<unsigned long>(rng() % 1000000000000ULL));
    rational s = make_rat(static_cast<long>(rng() % 2001) - 1000, 1 + rng() % 7);
    mpz_class c = ceil_sqrt_plus(n, s);
    REQUIRE(geq_sqrt(rational(c) - s, n));
    REQUIRE(!geq_sqrt(rational(c - 1) - s, n));
    mpz_class f = floor_sqrt_plus(n, s);
    REQUIRE(leq_sqrt(rational(f) - s, n));
    REQUIRE(!leq_sqrt(rational(f + 1) - s, n));
  }
}

TEST_CASE("parsing") {
  CHECK(parse_nat("99960000") == 99960000);
  CHECK_THROWS_AS(parse_nat("-3"), error);
  CHECK_THROWS_AS(parse_nat("12x"), error);
  CHECK(parse_rational("5/16") == make_rat(5, 16));
  CHECK(parse_rational("0.63") == make_rat(63, 100));
  CHECK(parse_rational("-1/2") == make_rat(-1, 2));
  CHECK(parse_rational("7") == make_rat(7));
  CHECK(parse_rational("1.50") == make_rat(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), error);
  CHECK_THROWS_AS(parse_rational("abc"), error);
  CHECK(str(make_rat(6, 4)) == "3/2");
  CHECK(str(nat(42)) == "42");
}

TEST_CASE("ln handles values far beyond double range") {
  nat big = 1;
  for (int i = 0; i < 5000; ++i) big *= 10;
  CHECK(ln(big) == doctest::Approx(5000 * 2.302585092994046).epsilon(1e-12));
  CHECK(ln(nat(1)) == 0.0);
}

TEST_CASE("unworkably fine exponents are rejected") {
  CHECK_THROWS_AS(floor_pow(nat(10), make_rat(123456789, 1000000007)), error);
  CHECK_THROWS_AS(floor_scaled_pow(make_rat(1), nat(10), make_rat(1, 2000000)), error);
}
