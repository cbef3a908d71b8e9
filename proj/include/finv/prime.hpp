#pragma once

#include <cstdint>
#include <vector>

namespace finv {

/// Deterministic primality test for 64-bit integers (Miller-Rabin with a fixed
/// witness set that is exact below 2^64).
bool is_prime(std::uint64_t n);

/// A validated prime characteristic. Construction throws ArgumentError when
/// the value is not prime, so every function taking a Prime may assume it.
class Prime {
 public:
  Prime() noexcept : value_(2) {}
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }

  friend bool operator==(Prime a, Prime b) noexcept { return a.value_ == b.value_; }

 private:
  std::uint64_t value_;
};

/// All primes in [lo, hi], ascending.
std::vector<Prime> primes_in_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace finv
