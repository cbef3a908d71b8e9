#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace finv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
BigInt pow_big(std::uint64_t base, std::uint64_t exp);

/// Exact "num/den" rendering in lowest terms; integers print without "/1".
std::string to_string(const Rational& r);

/// Parses "a", "a/b" (optionally signed). Throws ArgumentError on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// If the denominator of r is p^e for some e >= 0, returns e; otherwise -1.
int p_power_exponent_of_denominator(const Rational& r, std::uint64_t p);

}  // namespace finv
