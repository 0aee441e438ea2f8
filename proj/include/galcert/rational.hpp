#pragma once

// Exact rational scalars and their "p/q" text form.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace galcert {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Parses "p", "p/q" or "-p/q". Rejects zero denominators, blanks and
/// anything that is not a plain decimal integer pair.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw ParseError("empty integer in rational '" + std::string(text) + "'");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) throw ParseError("bad integer in rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw ParseError("bad character in rational '" + std::string(text) + "'");
    return Integer(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("denominator must be an unsigned integer in '" + std::string(text) + "'");
  Integer den = parse_int(den_text);
  if (den == 0) throw ParseError("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Canonical "p/q" with q > 0 and gcd(|p|, q) = 1. Integers keep the "/1".
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline int sign(const Rational& q) { return q.sign(); }

using RationalVector = std::vector<Rational>;

}  // namespace galcert
