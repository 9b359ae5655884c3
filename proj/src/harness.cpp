#include "asq/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace asq {

namespace {

void require(bool ok, errc code, const std::string& msg) {
  if (!ok) throw error(code, msg);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// floor(10^t) for t >= 0, split into mantissa digits and a power of ten
nat pow10_floor(double t) {
  if (t < 15.0) {
    return nat(static_cast<unsigned long>(std::floor(std::pow(10.0, t))));
  }
  double digits = std::floor(t);
  double mant = std::pow(10.0, t - digits + 14.0);  // 15 significant digits
  nat out(static_cast<unsigned long>(std::llround(mant)));
  nat scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits) - 14);
  return out * scale;
}

construction_result run_method(const measure_config& cfg, const nat& x) {
  switch (cfg.m) {
    case method::i: return construct_i(x, cfg.k);
    case method::ii: return construct_ii(x);
    case method::iii: return construct_iii(x);
    case method::iv: return construct_iv(x, cfg.phi);
    case method::v: return construct_v(x, cfg.pair, cfg.eps);
  }
  throw error(errc::domain, "unknown method");
}

nat method_floor(method m) {
  switch (m) {
    case method::i:
    case method::ii:
    case method::iii: return nat(100000000);
    case method::iv:
    case method::v: return nat("1000000000000");
  }
  throw error(errc::domain, "unknown method");
}

json nat_or_null(const nat& v, bool present) {
  if (!present) return nullptr;
  return str(v);
}

}  // namespace

rational theory_entry::exponent_at(const rational& theta) const {
  return coeff_const + coeff_theta * theta;
}

const std::vector<theory_entry>& theory_table() {
  using bound = theory_entry::bound;
  static const std::vector<theory_entry> table = {
      {"f(1/4)=1/4", make_rat(1, 4), make_rat(1, 4), false, make_rat(1, 4), make_rat(0),
       bound::equal},
      {"g>=1-2theta", make_rat(1, 4), make_rat(1, 2), false, make_rat(1), make_rat(-2),
       bound::lower},
      {"g(1/4)<=5/8", make_rat(1, 4), make_rat(1, 4), false, make_rat(5, 8), make_rat(0),
       bound::upper},
      {"g<=9/16", make_rat(5, 16), make_rat(1, 2), false, make_rat(9, 16), make_rat(0),
       bound::upper},
      {"g<=17/32", make_rat(5, 16), make_rat(1, 2), false, make_rat(17, 32), make_rat(0),
       bound::upper},
      {"g<=1/2 beyond 1/3", make_rat(1, 3), make_rat(1, 2), true, make_rat(1, 2), make_rat(0),
       bound::upper},
      {"g<=1/2 beyond 743/2306", make_rat(743, 2306), make_rat(1, 2), true, make_rat(1, 2),
       make_rat(0), bound::upper},
  };
  return table;
}

const theory_entry& theory_entry_by_label(const std::string& label) {
  for (const theory_entry& e : theory_table()) {
    if (e.label == label) return e;
  }
  throw error(errc::domain, "no theory entry labeled " + label);
}

void measure_config::validate() const {
  require(samples >= 2, errc::domain, "need at least 2 samples");
  require(x_min >= method_floor(m), errc::domain,
          "x_min below the method's precondition floor");
  require(x_min <= x_max, errc::domain, "x_min must not exceed x_max");
  require(tolerance >= 0, errc::domain, "tolerance must be >= 0");
}

rational method_predicted(const measure_config& cfg) {
  switch (cfg.m) {
    case method::i: return make_rat(5, 8);
    case method::ii: return make_rat(9, 16);
    case method::iii: return make_rat(17, 32);
    case method::iv: return make_rat(3, 4) - cfg.phi * 3 / 8;
    case method::v: return make_rat(1, 2) + cfg.eps / 8;
  }
  throw error(errc::domain, "unknown method");
}

fit_result fit_slope(const std::vector<std::pair<nat, nat>>& points) {
  return fit_slope(points, make_rat(0), 0.0);
}

fit_result fit_slope(const std::vector<std::pair<nat, nat>>& points,
                     const rational& predicted, double tolerance) {
  require(points.size() >= 2, errc::domain, "need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double max_local = 0.0;
  bool distinct = false;
  const double x0 = ln(points.front().first);
  for (const auto& [x, err] : points) {
    double lx = ln(x);
    double ly = err > 1 ? ln(err) : 0.0;
    if (lx != x0) distinct = true;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    if (lx > 0 && ly / lx > max_local) max_local = ly / lx;
  }
  require(distinct, errc::degenerate_fit, "degenerate fit: all x equal");
  const double n = static_cast<double>(points.size());
  fit_result out;
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.intercept = (sy - out.slope * sx) / n;
  out.max_local_exponent = max_local;
  out.predicted = predicted;
  out.pass = max_local <= as_double(predicted) + tolerance;
  return out;
}

campaign run_measure(const measure_config& cfg) {
  cfg.validate();

  // log-spaced grid with a seeded jitter of up to 10% of the step
  const double lg_min = ln(cfg.x_min) / M_LN10;
  const double lg_max = ln(cfg.x_max) / M_LN10;
  const double step = (lg_max - lg_min) / (cfg.samples - 1);
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> targets;
  for (int i = 0; i < cfg.samples; ++i) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    double t = lg_min + step * i + (2.0 * u - 1.0) * 0.1 * step;
    targets.push_back(std::min(std::max(t, lg_min), lg_max));
  }

  campaign out;
  for (double t : targets) {
    nat x = pow10_floor(t);
    if (x < cfg.x_min) x = cfg.x_min;
    if (x > cfg.x_max) x = cfg.x_max;
    sample_record rec;
    rec.x = x;
    try {
      construction_result res = run_method(cfg, x);
      rec.n = res.witness.n;
      rec.abs_error = res.abs_error;
      double lx = ln(x);
      rec.local_exponent = res.abs_error > 1 && lx > 0 ? ln(res.abs_error) / lx : 0.0;
      rec.ok = true;
      rec.note = "G=" + str(res.tr.G) + " H=" + str(res.tr.H) + " g=" + str(res.tr.g) +
                 " h=" + str(res.tr.h);
    } catch (const error& e) {
      rec.ok = false;
      rec.note = e.what();
      ++out.failures;
    }
    out.records.push_back(std::move(rec));
  }

  std::vector<std::pair<nat, nat>> pts;
  for (const sample_record& rec : out.records) {
    if (rec.ok) pts.emplace_back(rec.x, rec.abs_error);
  }
  if (pts.size() >= 2) {
    out.fit = fit_slope(pts, method_predicted(cfg), cfg.tolerance);
  } else {
    out.fit.predicted = method_predicted(cfg);
    out.fit.pass = false;
  }

  if (!cfg.out_path.empty()) {
    append_measure_csv(cfg.out_path, cfg.m, out.records);
  }
  return out;
}

json witness_json(const construction_result& result) {
  const type2_witness& w = result.witness;
  const trace& tr = result.tr;
  json j;
  j["x"] = str(result.x);
  j["n"] = str(w.n);
  j["a1"] = str(w.a1);
  j["b1"] = str(w.b1);
  j["a2"] = str(w.a2);
  j["b2"] = str(w.b2);
  j["d1"] = str(w.d1);
  j["d2"] = str(w.d2);
  j["e1"] = str(w.e1);
  j["e2"] = str(w.e2);
  j["G"] = str(tr.G);
  j["H"] = nat_or_null(tr.H, tr.m != method::i);
  j["g"] = str(tr.g);
  j["h"] = nat_or_null(tr.h, tr.m != method::i);
  json k = nullptr, phi = nullptr;
  for (const auto& [name, value] : tr.notes) {
    if (name == "k") k = std::stol(value);
    if (name == "phi") phi = value;
  }
  j["k"] = k;
  j["phi"] = phi;
  j["abs_error"] = str(result.abs_error);
  j["predicted_exponent"] = str(result.predicted_exponent);
  j["method"] = method_name(tr.m);
  j["retries"] = tr.retries;
  return j;
}

json report_json(const verify_report& rep) {
  json j;
  j["n"] = str(rep.n);
  j["theta"] = str(rep.params.theta);
  j["c"] = str(rep.params.c);
  j["window_lo"] = str(rep.window_lo);
  j["window_hi"] = str(rep.window_hi);
  if (rep.type1) {
    j["type1"] = {{"a", str(rep.type1->a)}, {"b", str(rep.type1->b)}};
  } else {
    j["type1"] = nullptr;
  }
  if (rep.type2) {
    const type2_witness& w = *rep.type2;
    j["type2"] = {{"a1", str(w.a1)}, {"b1", str(w.b1)}, {"a2", str(w.a2)},
                  {"b2", str(w.b2)}, {"d1", str(w.d1)}, {"d2", str(w.d2)},
                  {"e1", str(w.e1)}, {"e2", str(w.e2)}};
  } else {
    j["type2"] = nullptr;
  }
  j["theta_est"] = rep.theta_est;
  j["c_est"] = rep.c_est;
  return j;
}

json divisor_json(const divisor_result& res, const scan_range& range) {
  json j;
  j["a"] = str(res.a);
  j["quotient"] = str(res.quotient);
  j["remainder"] = str(res.remainder);
  j["range_lo"] = str(range.lo);
  j["range_hi"] = str(range.hi);
  j["scanned"] = str(res.scanned);
  j["exhaustive"] = res.exhaustive;
  return j;
}

json expsum_json(const expsum_report& rep) {
  json j;
  j["x"] = str(rep.x);
  j["lo"] = str(rep.lo);
  j["hi"] = str(rep.hi);
  j["K"] = str(rep.big_k);
  j["S"] = rep.s_value;
  j["predicted"] = rep.predicted;
  j["ratio"] = rep.ratio;
  j["pair"] = {{"p", str(rep.pair.p)}, {"q", str(rep.pair.q)}};
  return j;
}

json et_json(const et_report& rep) {
  json j;
  j["M"] = rep.big_m;
  j["lhs_sums"] = rep.lhs_sums;
  j["hypothesis_ok"] = rep.hypothesis_ok;
  if (rep.worst_arc) {
    j["worst_arc"] = {{"start", str(rep.worst_arc->start)},
                      {"length", str(rep.worst_arc->length)},
                      {"count", rep.worst_arc->count},
                      {"required", as_double(rep.worst_arc->required)}};
  } else {
    j["worst_arc"] = nullptr;
  }
  j["conclusion_violated"] = rep.conclusion_violated();
  return j;
}

json fit_json(const campaign& c, const measure_config& cfg) {
  json j;
  j["method"] = method_name(cfg.m);
  j["samples"] = c.records.size();
  j["failures"] = c.failures;
  j["slope"] = c.fit.slope;
  j["intercept"] = c.fit.intercept;
  j["max_local_exponent"] = c.fit.max_local_exponent;
  j["predicted"] = str(c.fit.predicted);
  j["tolerance"] = cfg.tolerance;
  j["pass"] = c.fit.pass;
  return j;
}

const char* const measure_csv_header = "method,x,n,abs_error,local_exponent,ok";

void write_measure_csv(std::ostream& out, method m, const std::vector<sample_record>& records) {
  for (const sample_record& rec : records) {
    out << method_name(m) << ',' << str(rec.x) << ',';
    if (rec.ok) {
      out << str(rec.n) << ',' << str(rec.abs_error) << ','
          << format_double(rec.local_exponent) << ",1\n";
    } else {
      out << ",,,0\n";
    }
  }
}

void append_measure_csv(const std::string& path, method m,
                        const std::vector<sample_record>& records) {
  bool fresh = true;
  {
    std::ifstream probe(path);
    if (probe.good() && probe.peek() != std::ifstream::traits_type::eof()) fresh = false;
  }
  std::ofstream out(path, std::ios::app);
  require(out.good(), errc::domain, "cannot open " + path);
  if (fresh) out << measure_csv_header << '\n';
  write_measure_csv(out, m, records);
}

}  // namespace asq
