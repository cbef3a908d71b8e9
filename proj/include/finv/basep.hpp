#pragma once

// Base-p digit machinery for rationals in (0,1]: non-terminating expansions,
// truncations, carry-free addition and the Lucas test for multinomials.

#include <cstdint>
#include <span>
#include <vector>

#include "finv/prime.hpp"
#include "finv/rational.hpp"

namespace finv {

/// Eventually periodic digit stream of a rational in (0,1], using the
/// non-terminating convention: the period is never the all-zero word, so
/// terminating fractions end in a repeating (p-1).
struct DigitExpansion {
  Prime prime;
  std::vector<std::uint64_t> preperiod;
  std::vector<std::uint64_t> period;

  /// Digit at position e (1-based); position 0 is 0 by convention.
  std::uint64_t digit(std::uint64_t e) const;

  /// The rational the stream sums to.
  Rational value() const;
};

/// Exponent vector k with |k| = sum of entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }
  std::uint64_t total() const noexcept;

 private:
  std::vector<std::uint64_t> entries_;
};

/// Length L of the longest run of leading digit positions 0..L that add
/// without carrying; `infinite` when every position does.
struct CarryFreePrefix {
  bool infinite = false;
  std::uint64_t length = 0;

  static CarryFreePrefix unbounded() { return {true, 0}; }
  static CarryFreePrefix finite(std::uint64_t n) { return {false, n}; }
  friend bool operator==(const CarryFreePrefix&, const CarryFreePrefix&) = default;
};

/// e-th digit of the non-terminating base-p expansion of alpha, computed as
/// (ceil(p^e a) - 1) - p (ceil(p^(e-1) a) - 1). alpha = 0 and e = 0 give 0.
/// Throws DomainError unless 0 <= alpha <= 1.
std::uint64_t digit(const Rational& alpha, Prime p, std::uint64_t e);

/// Finite (preperiod, period) description of the digit stream of alpha in (0,1].
DigitExpansion expansion(const Rational& alpha, Prime p);

/// Sum of the first e digits over p^d; satisfies ceil(p^e a) = p^e trunc + 1.
Rational truncate(const Rational& alpha, Prime p, std::uint64_t e);

/// True iff the e-th digits of the values sum to at most p - 1.
bool adds_without_carrying(std::span<const Rational> values, Prime p, std::uint64_t e);

/// sup{N : positions 0..N all add without carrying}. Decided exactly by
/// scanning max preperiod + lcm of the periods. Values must lie in (0,1].
/// Throws ResourceError if that scan would exceed max_positions.
CarryFreePrefix carry_free_prefix(std::span<const Rational> values, Prime p,
                                  std::uint64_t max_positions = 10'000'000);

/// Base-p digits of n, least significant first.
std::vector<std::uint64_t> base_p_digits(std::uint64_t n, Prime p);

/// True iff |k|! / (k_1! ... k_n!) is nonzero mod p, i.e. the k_i add without
/// carrying in base p.
bool multinomial_nonzero_mod_p(const MultiIndex& k, Prime p);

/// The multinomial coefficient |k|! / prod k_i! reduced mod p, via the
/// digit-wise product of small multinomials.
std::uint64_t multinomial_mod_p(const MultiIndex& k, Prime p);

}  // namespace finv
