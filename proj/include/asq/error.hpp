#pragma once

#include <stdexcept>
#include <string>

namespace asq {

enum class errc {
  scan_budget,
  domain,
  degenerate_construction,
  seed_failed,
  embed_failed,
  no_viable_divisor,
  decomposition_failed,
  empty_range,
  arc_too_short,
  degenerate_fit,
  invalid_pair,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace asq
