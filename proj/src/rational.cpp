#include "finv/rational.hpp"

#include <charconv>

#include "finv/errors.hpp"

namespace finv {

BigInt floor_of(const Rational& r) {
  BigInt num = numerator_of(r);
  BigInt den = denominator_of(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

std::string to_string(const Rational& r) {
  BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ArgumentError("malformed rational: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ArgumentError("malformed rational: '" + std::string(whole) + "'");
  }
  BigInt value{std::string(digits)};
  return text.front() == '-' ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

int p_power_exponent_of_denominator(const Rational& r, std::uint64_t p) {
  BigInt den = denominator_of(r);
  int e = 0;
  while (den > 1) {
    if (den % p != 0) return -1;
    den /= p;
    ++e;
  }
  return e;
}

}  // namespace finv
