#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dsr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

/// Exact textual form: "3" or "18/70" (canonicalized).
std::string to_string(const Rational& r);

/// Parses "3", "-7/2", "0.3" (exactly 3/10) or "1e-4" (exactly 1/10000).
Rational parse_rational(const std::string& s);

BigInt binomial(unsigned n, unsigned k);

/// base^e, exact. (boost::multiprecision::pow has no rational overload.)
Rational rpow(const Rational& base, unsigned e);

}  // namespace dsr
