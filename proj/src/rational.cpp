#include "fracclique/rational.hpp"

#include <stdexcept>

namespace fracclique {

Integer binom(long long a, long long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  Integer result = 1;
  for (long long i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

Rational rpow(long long base, long long exponent) {
  Integer p = 1;
  const long long e = exponent < 0 ? -exponent : exponent;
  for (long long i = 0; i < e; ++i) p *= base;
  if (exponent >= 0) return Rational(p);
  if (p == 0) throw std::domain_error("rpow: zero to a negative power");
  return Rational(Integer(1), p);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(Integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto frac_len = static_cast<long long>(text.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument(text);
    return Rational(Integer(digits)) * rpow(10, -frac_len);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

}  // namespace fracclique
