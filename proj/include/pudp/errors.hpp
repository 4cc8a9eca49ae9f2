#pragma once

#include <stdexcept>
#include <string>

namespace pudp {

enum class Errc {
  duplicate_element,
  antisymmetry_violation,
  empty_axis,
  unknown_element,
  partial_map,
  shape_mismatch,
  monotonicity_violation,
  interface_mismatch,
  kind_mismatch,
  invalid_interval,
  invalid_distribution,
  not_a_chain,
  incompatible_utility,
  zero_evidence,
  empty_feasible_set,
  syntax_error,
  type_mismatch,
  unknown_name,
  invalid_value,
  schema_error,
};

const char* errc_name(Errc c);

// Single exception type for the whole library.  `line`/`col` are 1-based and
// only set for errors that point into diagram or formula source text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Error(Errc code, int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " +
                           errc_name(code) + ": " + msg),
        code_(code), line_(line), col_(col) {}

  Errc code() const { return code_; }
  bool has_pos() const { return line_ > 0; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Errc code_;
  int line_ = 0, col_ = 0;
};

}  // namespace pudp
