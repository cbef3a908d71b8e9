#pragma once

// Sparse multivariate polynomials over F_p, finitely generated ideals, and
// graded-slice ideal membership by linear algebra.

#include <cstdint>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finv/budget.hpp"
#include "finv/prime.hpp"

namespace finv {

using Exponent = std::vector<std::uint64_t>;

class PolyFp {
 public:
  PolyFp(std::size_t num_variables, Prime p) : nvars_(num_variables), prime_(p) {}

  static PolyFp constant(std::size_t num_variables, Prime p, std::uint64_t c);
  static PolyFp monomial(Prime p, Exponent exponent, std::uint64_t c = 1);
  static PolyFp variable(std::size_t num_variables, Prime p, std::size_t index);

  std::size_t num_variables() const noexcept { return nvars_; }
  Prime prime() const noexcept { return prime_; }
  const std::map<Exponent, std::uint64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * x^exponent, dropping the term if the coefficient cancels.
  void add_term(const Exponent& exponent, std::uint64_t c);

  PolyFp& operator+=(const PolyFp& other);
  PolyFp& operator-=(const PolyFp& other);
  PolyFp operator*(const PolyFp& other) const;
  friend PolyFp operator+(PolyFp a, const PolyFp& b) { return a += b; }
  friend PolyFp operator-(PolyFp a, const PolyFp& b) { return a -= b; }
  PolyFp scaled(std::uint64_t c) const;
  PolyFp pow(std::uint64_t n) const;

  /// Largest / smallest weighted degree of a term. Undefined on zero.
  std::uint64_t max_degree(const std::vector<std::uint64_t>& weights) const;
  std::uint64_t min_degree(const std::vector<std::uint64_t>& weights) const;
  bool is_homogeneous(const std::vector<std::uint64_t>& weights) const;

  /// Terms grouped by weighted degree.
  std::map<std::uint64_t, PolyFp> homogeneous_components(
      const std::vector<std::uint64_t>& weights) const;

  /// Sorted (exponent vector, coefficient) pairs.
  std::vector<std::pair<Exponent, std::uint64_t>> serialize() const;

  /// Human readable form, e.g. "2*x1^3*x2 + x3"; "0" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const PolyFp& a, const PolyFp& b) {
    return a.nvars_ == b.nvars_ && a.prime_ == b.prime_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  Prime prime_;
  std::map<Exponent, std::uint64_t> terms_;
};

std::uint64_t weighted_degree(const Exponent& exponent, const std::vector<std::uint64_t>& weights);

/// Ideal given by generators over F_p[x_1..x_n] graded by `weights`.
/// When `degree_cap` is set, the list is only known to contain every
/// generator of weighted degree <= cap; membership questions above the cap
/// are inconclusive.
class IdealFp {
 public:
  IdealFp(std::size_t num_variables, Prime p, std::vector<std::uint64_t> weights = {});

  static IdealFp maximal(std::size_t num_variables, Prime p, std::vector<std::uint64_t> weights = {});
  static IdealFp principal(const PolyFp& g, std::vector<std::uint64_t> weights = {});

  void add_generator(PolyFp g);

  std::size_t num_variables() const noexcept { return nvars_; }
  Prime prime() const noexcept { return prime_; }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  const std::vector<PolyFp>& generators() const noexcept { return generators_; }
  std::optional<std::uint64_t> degree_cap() const noexcept { return degree_cap_; }
  void set_degree_cap(std::optional<std::uint64_t> cap) { degree_cap_ = cap; }

  bool is_homogeneous() const;
  /// True when some generator is a nonzero constant.
  bool has_unit_generator() const;

 private:
  std::size_t nvars_;
  Prime prime_;
  std::vector<std::uint64_t> weights_;
  std::vector<PolyFp> generators_;
  std::optional<std::uint64_t> degree_cap_;
  std::set<std::vector<std::pair<Exponent, std::uint64_t>>> seen_;
};

enum class Membership { Member, NotMember, Inconclusive };

struct MembershipOptions {
  /// Bound on deg h_j for inhomogeneous ideals; default deg g + max deg g_j.
  std::optional<std::uint64_t> degree_bound;
  Budget budget;
};

/// Decides g in I. For homogeneous I (w.r.t. its weights) each graded piece of
/// g is tested exactly against the span of m*g_j of matching degree. For
/// inhomogeneous I the search is bounded and a miss is Inconclusive.
Membership ideal_membership(const IdealFp& ideal, const PolyFp& g, const MembershipOptions& options = {});

/// As ideal_membership but throws InconclusiveError instead of returning it.
bool ideal_contains(const IdealFp& ideal, const PolyFp& g, const MembershipOptions& options = {});

/// Mutual containment of generators.
bool ideals_equal(const IdealFp& a, const IdealFp& b, const MembershipOptions& options = {});

/// All monomials with the given weighted degree.
std::vector<Exponent> monomials_of_degree(const std::vector<std::uint64_t>& weights, std::uint64_t degree);

}  // namespace finv
