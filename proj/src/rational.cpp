#include "dsr/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dsr {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  // decimal / scientific form, parsed exactly
  std::string t = s;
  long exp10 = 0;
  auto e = t.find_first_of("eE");
  if (e != std::string::npos) {
    exp10 = std::stol(t.substr(e + 1));
    t = t.substr(0, e);
  }
  bool neg = false;
  size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = (t[i++] == '-');
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    if (t[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational literal: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digits += t[i];
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal: " + s);
  BigInt num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long net = exp10 - frac_digits;
  BigInt pow10 = 1;
  for (long j = 0; j < (net < 0 ? -net : net); ++j) pow10 *= 10;
  return net >= 0 ? Rational(num * pow10) : Rational(num, pow10);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational rpow(const Rational& base, unsigned e) {
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), e),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), e));
}

}  // namespace dsr
