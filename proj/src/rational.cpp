#include "pudp/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "pudp/errors.hpp"

namespace pudp {

namespace {

long long parse_ll(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(Errc::invalid_value, "bad rational '" + std::string(whole) + "'");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+'))))
      throw Error(Errc::invalid_value, "bad rational '" + std::string(whole) + "'");
  }
  errno = 0;
  char* end = nullptr;
  std::string tmp(s);
  long long v = std::strtoll(tmp.c_str(), &end, 10);
  if (errno != 0 || end != tmp.c_str() + tmp.size())
    throw Error(Errc::invalid_value, "bad rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rat rat_parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error(Errc::invalid_value, "empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    long long num = parse_ll(s.substr(0, slash), text);
    long long den = parse_ll(s.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::invalid_value, "zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15)
      throw Error(Errc::invalid_value, "bad rational '" + std::string(text) + "'");
    std::string digits = std::string(s.substr(0, dot)) + std::string(frac);
    long long num = parse_ll(digits, text);
    long long den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rat(num, den);
  }
  return Rat(parse_ll(s, text), 1);
}

std::string rat_str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw Error(Errc::invalid_value, "non-finite number");
  if (x == std::floor(x) && std::abs(x) < 9e15) return Rat(static_cast<long long>(x), 1);
  // Continued-fraction convergents; stop when exact or denominator overflows.
  const long long max_den = 1000000000LL;
  bool neg = x < 0;
  double v = neg ? -x : x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    long long a = static_cast<long long>(std::floor(frac));
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || p2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - static_cast<double>(a);
    if (rem < 1e-13) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) throw Error(Errc::invalid_value, "cannot represent number as rational");
  return Rat(neg ? -p1 : p1, q1);
}

double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace pudp
