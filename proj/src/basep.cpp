#include "finv/basep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "finv/errors.hpp"

namespace finv {

namespace {

void require_unit_interval(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) {
    throw DomainError("expected a rational in [0,1], got " + to_string(alpha));
  }
}

void require_positive_unit_interval(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) {
    throw DomainError("expected a rational in (0,1], got " + to_string(alpha));
  }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t exp = p - 2;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t factorial_mod(std::uint64_t n, std::uint64_t p) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f = mul_mod(f, i, p);
  return f;
}

}  // namespace

std::uint64_t DigitExpansion::digit(std::uint64_t e) const {
  if (e == 0) return 0;
  if (e <= preperiod.size()) return preperiod[e - 1];
  return period[(e - 1 - preperiod.size()) % period.size()];
}

Rational DigitExpansion::value() const {
  const std::uint64_t p = prime.value();
  Rational head = 0;
  BigInt scale = 1;
  for (std::uint64_t d : preperiod) {
    scale *= p;
    head += Rational(BigInt(d), scale);
  }
  BigInt word = 0;
  for (std::uint64_t d : period) word = word * p + d;
  BigInt cycle = pow_big(p, period.size()) - 1;
  return head + Rational(word, cycle * scale);
}

std::uint64_t MultiIndex::total() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

std::uint64_t digit(const Rational& alpha, Prime p, std::uint64_t e) {
  require_unit_interval(alpha);
  if (e == 0 || alpha == 0) return 0;
  BigInt lower = pow_big(p, e - 1);
  BigInt upper = lower * p.value();
  BigInt d = (ceil_of(alpha * upper) - 1) - BigInt(p.value()) * (ceil_of(alpha * lower) - 1);
  return d.convert_to<std::uint64_t>();
}

DigitExpansion expansion(const Rational& alpha, Prime p) {
  require_positive_unit_interval(alpha);
  DigitExpansion out{p, {}, {}};
  if (alpha == 1) {
    out.period.push_back(p - 1);
    return out;
  }
  const BigInt den = denominator_of(alpha);
  BigInt rem = numerator_of(alpha);
  std::vector<std::uint64_t> digits;
  std::map<BigInt, std::size_t> seen;  // remainder -> position it produced
  while (rem != 0 && !seen.contains(rem)) {
    seen.emplace(rem, digits.size());
    BigInt scaled = rem * p.value();
    digits.push_back(BigInt(scaled / den).convert_to<std::uint64_t>());
    rem = scaled % den;
  }
  if (rem == 0) {
    // Terminating: ...d 0 0 0 becomes ...(d-1)(p-1)(p-1)...
    --digits.back();
    out.preperiod = std::move(digits);
    out.period.push_back(p - 1);
    return out;
  }
  const auto start = static_cast<std::ptrdiff_t>(seen.at(rem));
  out.preperiod.assign(digits.begin(), digits.begin() + start);
  out.period.assign(digits.begin() + start, digits.end());
  return out;
}

Rational truncate(const Rational& alpha, Prime p, std::uint64_t e) {
  require_positive_unit_interval(alpha);
  BigInt scale = pow_big(p, e);
  return Rational(ceil_of(alpha * scale) - 1, scale);
}

bool adds_without_carrying(std::span<const Rational> values, Prime p, std::uint64_t e) {
  std::uint64_t sum = 0;
  for (const Rational& v : values) sum += digit(v, p, e);
  return sum <= p - 1;
}

CarryFreePrefix carry_free_prefix(std::span<const Rational> values, Prime p,
                                  std::uint64_t max_positions) {
  std::vector<DigitExpansion> streams;
  streams.reserve(values.size());
  std::size_t max_pre = 0;
  BigInt period_lcm = 1;
  for (const Rational& v : values) {
    streams.push_back(expansion(v, p));
    max_pre = std::max(max_pre, streams.back().preperiod.size());
    period_lcm = boost::multiprecision::lcm(period_lcm, BigInt(streams.back().period.size()));
  }
  BigInt horizon = period_lcm + max_pre;
  if (horizon > max_positions) {
    throw ResourceError("carry-free scan needs " + horizon.str() + " digit positions, budget is " +
                        std::to_string(max_positions));
  }
  const auto last = horizon.convert_to<std::uint64_t>();
  for (std::uint64_t e = 1; e <= last; ++e) {
    std::uint64_t sum = 0;
    for (const auto& s : streams) sum += s.digit(e);
    if (sum > p - 1) return CarryFreePrefix::finite(e - 1);
  }
  return CarryFreePrefix::unbounded();
}

std::vector<std::uint64_t> base_p_digits(std::uint64_t n, Prime p) {
  std::vector<std::uint64_t> out;
  while (n > 0) {
    out.push_back(n % p);
    n /= p;
  }
  return out;
}

bool multinomial_nonzero_mod_p(const MultiIndex& k, Prime p) {
  std::vector<std::uint64_t> rest(k.entries().begin(), k.entries().end());
  bool any = true;
  while (any) {
    any = false;
    std::uint64_t column = 0;
    for (auto& v : rest) {
      column += v % p;
      v /= p;
      any = any || v > 0;
    }
    if (column > p - 1) return false;
  }
  return true;
}

std::uint64_t multinomial_mod_p(const MultiIndex& k, Prime p) {
  if (!multinomial_nonzero_mod_p(k, p)) return 0;
  std::vector<std::uint64_t> rest(k.entries().begin(), k.entries().end());
  std::uint64_t result = 1;
  bool any = true;
  while (any) {
    any = false;
    std::uint64_t column = 0;
    std::uint64_t denom = 1;
    for (auto& v : rest) {
      std::uint64_t d = v % p;
      column += d;
      denom = mul_mod(denom, factorial_mod(d, p), p);
      v /= p;
      any = any || v > 0;
    }
    result = mul_mod(result, mul_mod(factorial_mod(column, p), inverse_mod(denom, p), p), p);
  }
  return result;
}

}  // namespace finv
