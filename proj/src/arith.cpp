#include "asq/arith.hpp"

#include <cctype>
#include <cmath>

#include "asq/error.hpp"

namespace asq {

namespace {

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

unsigned long to_ulong_exp(const nat& v, const char* what) {
  // powers like x^(u/v) materialize x^u before the root; keep u, v desk-scale
  require(v.fits_ulong_p() && v.get_ui() <= 1000000UL, errc::domain,
          std::string(what) + " exponent component too large (limit 10^6)");
  return v.get_ui();
}

}  // namespace

nat isqrt(const nat& n) {
  require(n >= 0, errc::domain, "isqrt of negative value");
  nat r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

nat ceil_sqrt(const nat& n) {
  nat r = isqrt(n);
  if (r * r != n) ++r;
  return r;
}

nat nth_root_floor(const nat& n, unsigned long k) {
  require(k >= 1, errc::domain, "root order must be >= 1");
  require(n >= 0, errc::domain, "root of negative value");
  nat r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

nat floor_pow(const nat& n, const rational& e) {
  require(e >= 0, errc::domain, "floor_pow needs e >= 0");
  unsigned long u = to_ulong_exp(e.get_num(), "floor_pow");
  unsigned long v = to_ulong_exp(e.get_den(), "floor_pow");
  if (u == 0) return nat(1);
  nat p;
  mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), u);
  return nth_root_floor(p, v);
}

// Both scaled forms reduce to one v-th root: with c = P/Q and e = u/v,
// c * x^e = (P^v x^u)^(1/v) / Q, and flooring the root before dividing by Q
// is exact because (m+1)Q > root_floor forces (m+1)Q > the true root.
static nat scaled_pow_core(const rational& c, const nat& x, const rational& e,
                           nat& q_out, nat& w_out) {
  require(c > 0, errc::domain, "scale must be positive");
  require(e >= 0, errc::domain, "exponent must be >= 0");
  require(x >= 0, errc::domain, "base must be >= 0");
  unsigned long u = to_ulong_exp(e.get_num(), "scaled_pow");
  unsigned long v = to_ulong_exp(e.get_den(), "scaled_pow");
  const nat p = c.get_num();
  q_out = c.get_den();
  nat w;
  mpz_pow_ui(w.get_mpz_t(), p.get_mpz_t(), v);
  if (u > 0) {
    nat xu;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    w *= xu;
  }
  w_out = w;
  return nth_root_floor(w, v);
}

nat floor_scaled_pow(const rational& c, const nat& x, const rational& e) {
  nat q, w;
  nat s = scaled_pow_core(c, x, e, q, w);
  nat m;
  mpz_fdiv_q(m.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
  return m;
}

nat ceil_scaled_pow(const rational& c, const nat& x, const rational& e) {
  nat q, w;
  nat s = scaled_pow_core(c, x, e, q, w);
  nat m;
  mpz_cdiv_q(m.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
  // m*q >= root_floor; the true root may still exceed m*q, in which case the
  // next integer is the ceiling.
  unsigned long v = to_ulong_exp(e.get_den(), "scaled_pow");
  nat probe = m * q;
  nat pv;
  mpz_pow_ui(pv.get_mpz_t(), probe.get_mpz_t(), v);
  if (pv >= w) return m;
  return m + 1;
}

bool leq_sqrt(const rational& r, const nat& n) {
  if (r.get_num() < 0) return true;
  const nat& a = r.get_num();
  const nat& b = r.get_den();
  return a * a <= n * b * b;
}

bool geq_sqrt(const rational& r, const nat& n) {
  if (r.get_num() < 0) return false;
  const nat& a = r.get_num();
  const nat& b = r.get_den();
  return a * a >= n * b * b;
}

mpz_class ceil_sqrt_plus(const nat& n, const rational& s) {
  nat fs;
  mpz_fdiv_q(fs.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
  mpz_class m = isqrt(n) + fs;  // lower bound for the answer
  for (int step = 0; step <= 4; ++step, ++m) {
    if (geq_sqrt(rational(m) - s, n)) return m;
  }
  throw error(errc::domain, "ceil_sqrt_plus bracketing failed");
}

mpz_class floor_sqrt_plus(const nat& n, const rational& s) {
  nat cs;
  mpz_cdiv_q(cs.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
  mpz_class m = isqrt(n) + cs + 1;  // upper bound for the answer
  for (int step = 0; step <= 4; ++step, --m) {
    if (leq_sqrt(rational(m) - s, n)) return m;
  }
  throw error(errc::domain, "floor_sqrt_plus bracketing failed");
}

nat parse_nat(const std::string& text) {
  require(!text.empty(), errc::domain, "empty integer");
  for (char ch : text) {
    require(std::isdigit(static_cast<unsigned char>(ch)) != 0, errc::domain,
            "not a nonnegative integer: " + text);
  }
  return nat(text, 10);
}

rational parse_rational(const std::string& text) {
  require(!text.empty(), errc::domain, "empty rational");
  std::string body = text;
  bool negative = false;
  if (body[0] == '+' || body[0] == '-') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  require(!body.empty(), errc::domain, "malformed rational: " + text);

  rational q;
  auto slash = body.find('/');
  auto dot = body.find('.');
  try {
    if (slash != std::string::npos) {
      nat num = parse_nat(body.substr(0, slash));
      nat den = parse_nat(body.substr(slash + 1));
      require(den > 0, errc::domain, "zero denominator: " + text);
      q = rational(num);
      q /= rational(den);
    } else if (dot != std::string::npos) {
      std::string ip = body.substr(0, dot);
      std::string fp = body.substr(dot + 1);
      if (ip.empty()) ip = "0";
      require(!fp.empty(), errc::domain, "malformed rational: " + text);
      nat scaled = parse_nat(ip + fp);
      nat den(1);
      for (size_t i = 0; i < fp.size(); ++i) den *= 10;
      q = rational(scaled);
      q /= rational(den);
    } else {
      q = rational(parse_nat(body));
    }
  } catch (const std::invalid_argument&) {
    throw error(errc::domain, "malformed rational: " + text);
  }
  if (negative) q = -q;
  q.canonicalize();
  return q;
}

std::string str(const nat& n) { return n.get_str(); }

std::string str(const rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double ln(const nat& n) {
  if (n <= 1) return 0.0;
  signed long exp2 = 0;
  double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(d) + static_cast<double>(exp2) * M_LN2;
}

double as_double(const rational& q) { return q.get_d(); }

}  // namespace asq
