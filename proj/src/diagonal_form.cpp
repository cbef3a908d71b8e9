#include "finv/diagonal_form.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "finv/errors.hpp"

namespace finv {

DiagonalForm::DiagonalForm(Prime p, std::vector<std::uint64_t> exponents,
                           std::vector<std::uint64_t> coefficients)
    : prime_(p), exponents_(std::move(exponents)), coefficients_(std::move(coefficients)) {
  if (exponents_.empty()) throw ArgumentError("a diagonal form needs at least one variable");
  for (auto d : exponents_) {
    if (d < 2) throw ArgumentError("exponents must be at least 2, got " + std::to_string(d));
  }
  if (coefficients_.empty()) coefficients_.assign(exponents_.size(), 1);
  if (coefficients_.size() != exponents_.size()) {
    throw ArgumentError("expected " + std::to_string(exponents_.size()) + " coefficients, got " +
                        std::to_string(coefficients_.size()));
  }
  for (auto& u : coefficients_) {
    u %= p.value();
    if (u == 0) throw ArgumentError("coefficients must be nonzero mod " + std::to_string(p.value()));
  }
}

DiagonalForm DiagonalForm::fermat(std::uint64_t degree, Prime p) {
  return DiagonalForm(p, std::vector<std::uint64_t>(degree, degree));
}

std::uint64_t DiagonalForm::max_exponent() const noexcept {
  return *std::max_element(exponents_.begin(), exponents_.end());
}

std::vector<Rational> DiagonalForm::reciprocal_exponents() const {
  std::vector<Rational> out;
  out.reserve(exponents_.size());
  for (auto d : exponents_) out.push_back(make_rational(1, static_cast<std::int64_t>(d)));
  return out;
}

Rational DiagonalForm::reciprocal_sum() const {
  Rational sum = 0;
  for (auto d : exponents_) sum += make_rational(1, static_cast<std::int64_t>(d));
  return sum;
}

std::optional<std::uint64_t> DiagonalForm::fermat_degree() const {
  const auto d = exponents_.front();
  if (exponents_.size() != d) return std::nullopt;
  if (!std::all_of(exponents_.begin(), exponents_.end(), [d](auto x) { return x == d; })) {
    return std::nullopt;
  }
  return d;
}

std::uint64_t DiagonalForm::weighted_degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::uint64_t{1},
                         [](std::uint64_t acc, std::uint64_t d) { return std::lcm(acc, d); });
}

std::vector<std::uint64_t> DiagonalForm::weights() const {
  const auto l = weighted_degree();
  std::vector<std::uint64_t> out;
  out.reserve(exponents_.size());
  for (auto d : exponents_) out.push_back(l / d);
  return out;
}

}  // namespace finv
