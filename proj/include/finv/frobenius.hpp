#pragma once

// Brute-force Frobenius oracle for diagonal hypersurfaces: exact expansion of
// f^N over F_p, nu_f(p^e), the coefficient ideals I_e(f^N), test ideals, and
// the combinatorial membership criteria for single variables.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "finv/basep.hpp"
#include "finv/budget.hpp"
#include "finv/diagonal_form.hpp"
#include "finv/errors.hpp"
#include "finv/poly.hpp"
#include "finv/rational.hpp"

namespace finv {

/// max{N : f^N not in m^[e]}, by a digit DP over the base-p digits of the
/// exponents k_i (the carry-free condition is digit-local).
std::uint64_t nu(const DiagonalForm& form, std::uint64_t e, const Budget& budget = {});

/// Same quantity by enumerating the box d_i k_i <= p^e - 1. Cross-check only.
std::uint64_t nu_by_enumeration(const DiagonalForm& form, std::uint64_t e, const Budget& budget = {});

/// (nu/p^e, (nu+1)/p^e); the threshold lies in the half-open interval (lo, hi].
std::pair<Rational, Rational> fpt_bracket(const DiagonalForm& form, std::uint64_t e,
                                          const Budget& budget = {});

/// f as a PolyFp.
PolyFp to_poly(const DiagonalForm& form);

/// f^N expanded term by term; only carry-free k contribute.
PolyFp expand_power(const DiagonalForm& form, std::uint64_t N, const Budget& budget = {});

/// Calls visit(k, coefficient) for every k with |k| = N and a nonzero
/// multinomial mod p, in lexicographic order. `upper` optionally bounds each
/// k_i. Stops early when visit returns false.
void for_each_carry_free_term(const DiagonalForm& form, std::uint64_t N,
                              const std::vector<std::uint64_t>& upper,
                              const std::function<bool(const std::vector<std::uint64_t>&, std::uint64_t)>& visit,
                              const Budget& budget = {});

struct GeneratorOptions {
  /// Only generators of weighted degree <= cap; the ideal is marked truncated.
  std::optional<std::uint64_t> degree_cap;
  Budget budget;
};

/// I_e(f^N): writes each exponent D k = p^e q + r with 0 <= r < p^e and emits
/// sum c_k x^q for every residue r. Over F_p the p^e-th root of a scalar is
/// the scalar itself. The ideal uses the grading in which f is homogeneous.
IdealFp pideal_generators(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                          const GeneratorOptions& options = {});

/// g in I^[e], decided as I_e(g) contained in I. Throws InconclusiveError when
/// a membership test cannot be settled.
bool frobenius_power_membership(const PolyFp& g, const IdealFp& ideal, std::uint64_t e,
                                const MembershipOptions& options = {});

struct TestIdealOptions {
  std::uint64_t e_hint = 1;
  /// Last level tried when the denominator of lambda is not a power of p.
  std::uint64_t e_max = 4;
  std::optional<std::uint64_t> degree_cap;
  Budget budget;
};

struct TestIdealResult {
  IdealFp ideal;
  std::uint64_t level = 0;  // e
  std::uint64_t power = 0;  // ceil(p^e lambda)
  /// Set when the answer comes from two equal consecutive levels rather than
  /// from a p-power denominator.
  bool stabilized_heuristically = false;
};

/// Thrown by test_ideal when consecutive levels never agree; carries the last
/// two ideals computed.
class StabilizationError : public InconclusiveError {
 public:
  StabilizationError(const std::string& what, std::vector<IdealFp> last_two)
      : InconclusiveError(what), last_two_(std::move(last_two)) {}
  const std::vector<IdealFp>& last_two() const noexcept { return last_two_; }

 private:
  std::vector<IdealFp> last_two_;
};

/// tau(f^lambda). Exact at level max(e_hint, e0) when lambda is in p^-e0 N;
/// otherwise the first of e_hint..e_max where I_e(f^ceil(p^e lambda)) equals
/// the previous level.
TestIdealResult test_ideal(const DiagonalForm& form, const Rational& lambda,
                           const TestIdealOptions& options = {});

enum class IdealShape { Unit, Maximal, PrincipalF, Other };

/// Coarse identification of an ideal relative to f: the unit ideal, m, (f),
/// or something else. Throws InconclusiveError when a truncated ideal cannot
/// settle the question.
IdealShape classify_ideal(const IdealFp& ideal, const DiagonalForm& form,
                          const MembershipOptions& options = {});

/// x_i in I_e(f^N) for the Fermat form of degree d (unit coefficients): some
/// carry-free k with |k| = N has p^e <= d k_i < 2 p^e and d k_j < p^e for
/// j != i. Throws HypothesisError if d is a power of p.
bool nogathering_member(std::uint64_t degree, Prime p, std::uint64_t e, std::uint64_t N,
                        std::size_t i);

enum class ProjectionVerdict { Member, DigitSumTooLarge, MultinomialVanishes };

/// Whether the projection criterion certifies x_i in I_e(f^M) with
/// M = p^e |<delta>_e| + 1. Throws HypothesisError when d_i >= p^e or d_i is
/// a power of p.
ProjectionVerdict projection_ideal_member(const DiagonalForm& form, std::uint64_t e, std::size_t i);

/// p^e * sum of e-th truncations of 1/d_i, plus one.
std::uint64_t projection_power(const DiagonalForm& form, std::uint64_t e);

/// Which variables x_i lie in I_e(f^N), decided by linear algebra on the
/// generators of weighted degree <= max w_i. Generation stops as soon as every
/// variable is accounted for.
std::vector<bool> coefficient_ideal_variables(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                                              const Budget& budget = {});

/// Smallest weighted degree of a generator of I_e(f^N); 0 means unit ideal.
std::uint64_t min_generator_degree(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                                   const Budget& budget = {});

/// Cheap invariant of I_e(f^N) for the Fermat form used by jump_scan.
struct IdealFingerprint {
  std::uint64_t min_degree = 0;
  std::vector<bool> contains_variable;

  bool unit() const { return min_degree == 0; }
  bool maximal() const;
  friend bool operator==(const IdealFingerprint&, const IdealFingerprint&) = default;
};

IdealFingerprint fermat_fingerprint(std::uint64_t degree, Prime p, std::uint64_t e, std::uint64_t N,
                                    const Budget& budget = {});

struct JumpScanPoint {
  Rational lambda;
  IdealFingerprint fingerprint;
};

/// Walks the grid m / p^e_max for m = 1..p^e_max and reports each point whose
/// fingerprint of tau(f^lambda) = I_e(f^m) differs from the previous point.
/// A reported point bounds a jumping number in (previous point, point].
/// Requires p > d.
std::vector<JumpScanPoint> jump_scan(std::uint64_t degree, Prime p, std::uint64_t e_max,
                                     const Budget& budget = {});

std::string_view to_string(IdealShape shape);
std::string_view to_string(ProjectionVerdict verdict);

}  // namespace finv
