#pragma once

#include <boost/rational.hpp>
#include <string>
#include <string_view>

namespace pudp {

using Rat = boost::rational<long long>;

// Accepts "3", "-7", "2/5", "-2/5", "0.25", "-1.5".
Rat rat_parse(std::string_view text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_str(const Rat& r);

// Best rational with denominator <= 10^9 (continued fractions).  Exact for
// every value a JSON author is likely to write (halves, tenths, ...).
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

}  // namespace pudp
