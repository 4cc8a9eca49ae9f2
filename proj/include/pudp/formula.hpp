#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pudp/rational.hpp"

namespace pudp {

// Arithmetic over exact rationals: +, -, *, max, min, parentheses, rational
// constants ("3", "1/2", "0.25") and free names bound at evaluation time.
struct Formula {
  enum class Op { num, name, add, sub, mul, neg, max_, min_ };
  Op op;
  Rat value;         // num
  std::string name;  // name
  std::shared_ptr<const Formula> lhs, rhs;
};

using FormulaPtr = std::shared_ptr<const Formula>;

FormulaPtr parse_formula(std::string_view text);

Rat eval_formula(const Formula& f, const std::map<std::string, Rat>& env);

// Free names, each listed once, in first-use order.
std::vector<std::string> formula_names(const Formula& f);

}  // namespace pudp
