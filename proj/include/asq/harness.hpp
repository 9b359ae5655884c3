#pragma once

// Measurement harness: log-spaced construction campaigns, log-log slope
// fits against the predicted exponents, the registry of proven exponent
// bounds, and JSON/CSV serialization for the CLI.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "asq/almost_square.hpp"
#include "asq/construct.hpp"
#include "asq/divisor.hpp"
#include "asq/expsum.hpp"

namespace asq {

using json = nlohmann::ordered_json;

// One proven statement about f/g: on [theta_lo, theta_hi] the interval
// exponent satisfies <kind> coeff_const + coeff_theta * theta.
struct theory_entry {
  std::string label;
  rational theta_lo, theta_hi;
  bool open_lo = false;  // strict inequality at the left endpoint
  rational coeff_const, coeff_theta;
  enum class bound { equal, upper, lower } kind = bound::upper;
  rational exponent_at(const rational& theta) const;
};

const std::vector<theory_entry>& theory_table();
const theory_entry& theory_entry_by_label(const std::string& label);

struct measure_config {
  method m = method::i;
  nat x_min, x_max;
  int samples = 25;
  std::uint64_t seed = 1;
  long k = 1;                         // method i
  rational phi = make_rat(3, 5);      // method iv
  exponent_pair pair = huxley_pair(); // method v
  rational eps = make_rat(1, 50);     // method v
  double tolerance = 0.03;
  std::string out_path;  // CSV appended here when nonempty
  void validate() const;
};

struct sample_record {
  nat x;
  nat n, abs_error;
  double local_exponent = 0.0;  // ln(max(err,1)) / ln(x)
  bool ok = false;
  std::string note;  // failure reason, or a short trace summary
};

struct fit_result {
  double slope = 0.0;
  double intercept = 0.0;
  double max_local_exponent = 0.0;
  rational predicted;
  bool pass = false;  // max_local_exponent <= predicted + tolerance
};

struct campaign {
  std::vector<sample_record> records;
  fit_result fit;
  std::size_t failures = 0;
};

// least-squares fit of ln(max(err,1)) against ln(x)
fit_result fit_slope(const std::vector<std::pair<nat, nat>>& points);
fit_result fit_slope(const std::vector<std::pair<nat, nat>>& points,
                     const rational& predicted, double tolerance);

campaign run_measure(const measure_config& cfg);

rational method_predicted(const measure_config& cfg);

// serialization
json witness_json(const construction_result& result);
json report_json(const verify_report& rep);
json divisor_json(const divisor_result& res, const scan_range& range);
json expsum_json(const expsum_report& rep);
json et_json(const et_report& rep);
json fit_json(const campaign& c, const measure_config& cfg);

extern const char* const measure_csv_header;
void write_measure_csv(std::ostream& out, method m, const std::vector<sample_record>& records);
// appends to path, writing the header only when the file is new/empty
void append_measure_csv(const std::string& path, method m,
                        const std::vector<sample_record>& records);

}  // namespace asq
