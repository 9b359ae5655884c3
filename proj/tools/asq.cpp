// asq: almost-square toolbox.
//
// Subcommands: construct, verify, scan, divisor, expsum, et-check, measure,
// pairs. Integers print as decimal strings and rationals as "num/den", so
// every exact value survives the JSON round trip.

#include <CLI11.hpp>
#include <iostream>
#include <random>
#include <string>

#include "asq/harness.hpp"

namespace {

using namespace asq;

struct cli_options {
  std::string x, n, center, radius;             // decimal naturals
  std::string theta = "1/4", c = "1";           // window parameters
  std::string phi = "3/5", epsilon = "1/50";    // method parameters
  std::string alpha = "1/2", c1 = "1/2", c2 = "1";
  std::string pair = "huxley";
  std::string method = "i";
  std::string side = "below";
  std::string objective = "theta";
  std::string out;
  std::string threshold;
  long k = 1;
  int samples = 25;
  int depth = 6;
  unsigned long long seed = 1;
  unsigned long budget = default_scan_budget;
  double tolerance = 0.03;
  bool json_out = false;
  bool exhaustive = false;
  bool optimize = false;
  bool list_table = false;
};

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_construct(const cli_options& opt) {
  nat x = parse_nat(opt.x);
  method m = parse_method(opt.method);
  construction_result res;
  switch (m) {
    case method::i: res = construct_i(x, opt.k); break;
    case method::ii: res = construct_ii(x); break;
    case method::iii: res = construct_iii(x); break;
    case method::iv: res = construct_iv(x, parse_rational(opt.phi)); break;
    case method::v:
      res = construct_v(x, parse_pair(opt.pair), parse_rational(opt.epsilon));
      break;
  }
  print(witness_json(res));
  return 0;
}

int run_verify(const cli_options& opt, int type) {
  nat n = parse_nat(opt.n);
  window_params p{parse_rational(opt.theta), parse_rational(opt.c)};
  verify_report rep = type == 1 ? verify_type1(n, p, opt.budget) : verify_type2(n, p, opt.budget);
  print(report_json(rep));
  return 0;
}

int run_scan(const cli_options& opt) {
  nat center = parse_nat(opt.center);
  nat radius = parse_nat(opt.radius);
  window_params p{parse_rational(opt.theta), parse_rational(opt.c)};
  for (nat delta = 0; delta <= radius; ++delta) {
    for (int sign : {-1, +1}) {
      if (sign < 0 && delta > center - 1) continue;
      if (sign < 0 && delta == 0) continue;
      nat n = sign < 0 ? nat(center - delta) : nat(center + delta);
      verify_report rep = verify_type2(n, p, opt.budget);
      if (!rep.type2) continue;
      json j = report_json(rep);
      j["center"] = str(center);
      j["distance"] = str(delta);
      print(j);
      return 0;
    }
  }
  json j;
  j["center"] = str(center);
  j["radius"] = str(radius);
  j["found"] = false;
  print(j);
  return 0;
}

int run_divisor(const cli_options& opt) {
  divisor_query q;
  q.x = parse_nat(opt.x);
  q.alpha = parse_rational(opt.alpha);
  q.c1 = parse_rational(opt.c1);
  q.c2 = parse_rational(opt.c2);
  q.side = opt.side == "above" ? divisor_side::above : divisor_side::below;
  q.budget = opt.budget;
  if (!opt.threshold.empty() && !opt.exhaustive) q.threshold = parse_nat(opt.threshold);
  divisor_result res = best_almost_divisor(q);
  json j = divisor_json(res, divisor_range(q));
  j["side"] = opt.side;
  print(j);
  return 0;
}

int run_expsum(const cli_options& opt) {
  nat x = parse_nat(opt.x);
  divisor_query q;
  q.x = x;
  q.alpha = parse_rational(opt.alpha);
  q.c1 = parse_rational(opt.c1);
  q.c2 = parse_rational(opt.c2);
  scan_range range = divisor_range(q);
  expsum_report rep =
      S_sum(nat(opt.k), x, range.lo, range.hi, parse_pair(opt.pair), opt.budget);
  print(expsum_json(rep));
  return 0;
}

int run_et_check(const cli_options& opt, unsigned long big_m) {
  nat x = parse_nat(opt.x);
  divisor_query q;
  q.x = x;
  q.alpha = parse_rational(opt.alpha);
  q.c1 = parse_rational(opt.c1);
  q.c2 = parse_rational(opt.c2);
  scan_range range = divisor_range(q);
  point_set pts = points_from_quotients(x, range.lo, range.hi, opt.budget);

  std::mt19937_64 rng(opt.seed);
  std::vector<arc> arcs;
  rational len = make_rat(4) / make_rat(static_cast<long>(big_m) + 1);
  for (int i = 0; i < opt.samples; ++i) {
    rational start(static_cast<unsigned long>(rng() >> 44), 1048576UL);  // k / 2^20
    start.canonicalize();
    arcs.push_back({start, len});
  }
  et_report rep = et_check(pts, big_m, arcs);
  json j = et_json(rep);
  j["J"] = pts.size();
  j["arcs"] = arcs.size();
  print(j);
  return 0;
}

int run_pairs(const cli_options& opt) {
  json j;
  json reg = json::array();
  for (const exponent_pair& e : registered_pairs()) {
    reg.push_back({{"label", e.label},
                   {"p", str(e.p)},
                   {"q", str(e.q)},
                   {"phi_star", str(phi_star(e))},
                   {"theta_star", str(theta_star(e))}});
  }
  j["registered"] = reg;
  if (opt.optimize) {
    pair_objective obj = opt.objective == "sum" ? pair_objective::min_p_plus_q
                                                : pair_objective::min_theta_star;
    optimized_pair best = optimize_pair(opt.depth, obj);
    j["best"] = {{"word", best.word},
                 {"p", str(best.pair.p)},
                 {"q", str(best.pair.q)},
                 {"phi_star", str(phi_star(best.pair))},
                 {"theta_star", str(theta_star(best.pair))}};
  }
  print(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost squares of type 2: constructions, verification, measurements"};
  app.require_subcommand(1);
  cli_options opt;

  auto* cmd_construct = app.add_subcommand("construct", "build an almost square near x");
  cmd_construct->add_option("--method", opt.method, "i|ii|iii|iv|v")->required();
  cmd_construct->add_option("--x", opt.x, "target x (decimal)")->required();
  cmd_construct->add_option("--k", opt.k, "method i offset (default 1)");
  cmd_construct->add_option("--phi", opt.phi, "method iv exponent (rational)");
  cmd_construct->add_option("--pair", opt.pair, "method v exponent pair");
  cmd_construct->add_option("--epsilon", opt.epsilon, "method v epsilon");
  cmd_construct->add_flag("--json", opt.json_out, "JSON output (always on)");

  auto* cmd_verify = app.add_subcommand("verify", "window-scan verification of n");
  int verify_type_sel = 2;
  cmd_verify->add_option("--n", opt.n, "the integer to verify")->required();
  cmd_verify->add_option("--theta", opt.theta, "window exponent (rational)");
  cmd_verify->add_option("--c", opt.c, "window constant (rational)");
  cmd_verify->add_option("--type", verify_type_sel, "1 or 2 (default 2)");
  cmd_verify->add_option("--budget", opt.budget, "scan budget (candidates)");

  auto* cmd_scan = app.add_subcommand("scan", "nearest type-2 almost square around a center");
  cmd_scan->add_option("--center", opt.center, "search center")->required();
  cmd_scan->add_option("--radius", opt.radius, "search radius")->required();
  cmd_scan->add_option("--theta", opt.theta, "window exponent");
  cmd_scan->add_option("--c", opt.c, "window constant");
  cmd_scan->add_option("--budget", opt.budget, "scan budget per candidate");

  auto* cmd_divisor = app.add_subcommand("divisor", "best almost divisor in [c1 x^a, c2 x^a]");
  cmd_divisor->add_option("--x", opt.x, "the integer to almost-divide")->required();
  cmd_divisor->add_option("--alpha", opt.alpha, "range exponent (rational)");
  cmd_divisor->add_option("--c1", opt.c1, "lower range constant");
  cmd_divisor->add_option("--c2", opt.c2, "upper range constant");
  cmd_divisor->add_option("--side", opt.side, "below|above (default below)");
  cmd_divisor->add_option("--budget", opt.budget, "scan budget");
  cmd_divisor->add_option("--threshold", opt.threshold, "early exit remainder");
  cmd_divisor->add_flag("--exhaustive", opt.exhaustive, "ignore the threshold");

  auto* cmd_expsum = app.add_subcommand("expsum", "S = sum over l of |sum_a e(l x / a)|");
  cmd_expsum->add_option("--x", opt.x, "phase numerator x")->required();
  cmd_expsum->add_option("--k", opt.k, "K: l runs over [K, 2K]")->required();
  cmd_expsum->add_option("--alpha", opt.alpha, "range exponent");
  cmd_expsum->add_option("--c1", opt.c1, "lower range constant");
  cmd_expsum->add_option("--c2", opt.c2, "upper range constant");
  cmd_expsum->add_option("--pair", opt.pair, "exponent pair for the predicted size");
  cmd_expsum->add_option("--budget", opt.budget, "scan budget");

  auto* cmd_et = app.add_subcommand("et-check", "Erdos-Turan hypothesis/conclusion check");
  unsigned long big_m = 4;
  cmd_et->add_option("--x", opt.x, "points are {x/a}")->required();
  cmd_et->add_option("--m", big_m, "M in the hypothesis")->required();
  cmd_et->add_option("--alpha", opt.alpha, "range exponent");
  cmd_et->add_option("--c1", opt.c1, "lower range constant");
  cmd_et->add_option("--c2", opt.c2, "upper range constant");
  cmd_et->add_option("--samples", opt.samples, "number of random arcs");
  cmd_et->add_option("--seed", opt.seed, "arc RNG seed");
  cmd_et->add_option("--budget", opt.budget, "scan budget");

  auto* cmd_measure = app.add_subcommand("measure", "exponent campaign over log-spaced x");
  std::string x_min, x_max;
  cmd_measure->add_option("--method", opt.method, "i|ii|iii|iv|v")->required();
  cmd_measure->add_option("--x-min", x_min, "smallest x")->required();
  cmd_measure->add_option("--x-max", x_max, "largest x")->required();
  cmd_measure->add_option("--samples", opt.samples, "sample count (default 25)");
  cmd_measure->add_option("--seed", opt.seed, "jitter seed");
  cmd_measure->add_option("--k", opt.k, "method i offset");
  cmd_measure->add_option("--phi", opt.phi, "method iv exponent");
  cmd_measure->add_option("--pair", opt.pair, "method v exponent pair");
  cmd_measure->add_option("--epsilon", opt.epsilon, "method v epsilon");
  cmd_measure->add_option("--tolerance", opt.tolerance, "slope acceptance tolerance");
  cmd_measure->add_option("--out", opt.out, "append CSV records here");
  cmd_measure->add_flag("--json", opt.json_out, "print the fit as JSON");

  auto* cmd_pairs = app.add_subcommand("pairs", "exponent pair registry and optimizer");
  cmd_pairs->add_flag("--optimize", opt.optimize, "search A/B words");
  cmd_pairs->add_option("--depth", opt.depth, "maximum word length");
  cmd_pairs->add_option("--objective", opt.objective, "theta|sum");
  cmd_pairs->add_flag("--list", opt.list_table, "list the registry (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_construct->parsed()) return run_construct(opt);
    if (cmd_verify->parsed()) return run_verify(opt, verify_type_sel);
    if (cmd_scan->parsed()) return run_scan(opt);
    if (cmd_divisor->parsed()) return run_divisor(opt);
    if (cmd_expsum->parsed()) return run_expsum(opt);
    if (cmd_et->parsed()) return run_et_check(opt, big_m);
    if (cmd_measure->parsed()) {
      measure_config cfg;
      cfg.m = parse_method(opt.method);
      cfg.x_min = parse_nat(x_min);
      cfg.x_max = parse_nat(x_max);
      cfg.samples = opt.samples;
      cfg.seed = opt.seed;
      cfg.k = opt.k;
      cfg.phi = parse_rational(opt.phi);
      cfg.pair = parse_pair(opt.pair);
      cfg.eps = parse_rational(opt.epsilon);
      cfg.tolerance = opt.tolerance;
      cfg.out_path = opt.out;
      campaign c = run_measure(cfg);
      if (opt.json_out) {
        print(fit_json(c, cfg));
      } else {
        std::cout << "method " << method_name(cfg.m) << ": " << c.records.size() << " samples, "
                  << c.failures << " failures, slope " << c.fit.slope << ", max local exponent "
                  << c.fit.max_local_exponent << " vs predicted " << str(c.fit.predicted)
                  << " + " << cfg.tolerance << " -> " << (c.fit.pass ? "pass" : "FAIL") << "\n";
      }
      return c.fit.pass ? 0 : 1;
    }
    if (cmd_pairs->parsed()) return run_pairs(opt);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
