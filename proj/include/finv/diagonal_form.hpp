#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "finv/prime.hpp"
#include "finv/rational.hpp"

namespace finv {

/// f = u_1 x_1^{d_1} + ... + u_n x_n^{d_n} over F_p with every u_i != 0.
class DiagonalForm {
 public:
  /// Coefficients default to all ones. Throws ArgumentError for an empty
  /// exponent list, any d_i < 2, a length mismatch, or a coefficient that
  /// vanishes mod p.
  DiagonalForm(Prime p, std::vector<std::uint64_t> exponents,
               std::vector<std::uint64_t> coefficients = {});

  static DiagonalForm fermat(std::uint64_t degree, Prime p);

  Prime prime() const noexcept { return prime_; }
  std::size_t num_variables() const noexcept { return exponents_.size(); }
  std::span<const std::uint64_t> exponents() const noexcept { return exponents_; }
  std::span<const std::uint64_t> coefficients() const noexcept { return coefficients_; }
  std::uint64_t max_exponent() const noexcept;

  /// (1/d_1, ..., 1/d_n)
  std::vector<Rational> reciprocal_exponents() const;
  /// 1/d_1 + ... + 1/d_n
  Rational reciprocal_sum() const;

  /// Degree d when all exponents equal d and n = d.
  std::optional<std::uint64_t> fermat_degree() const;

  /// Grading in which f is homogeneous: w_i = lcm(d) / d_i, so deg f = lcm(d).
  std::vector<std::uint64_t> weights() const;
  std::uint64_t weighted_degree() const;

 private:
  Prime prime_;
  std::vector<std::uint64_t> exponents_;
  std::vector<std::uint64_t> coefficients_;
};

}  // namespace finv
