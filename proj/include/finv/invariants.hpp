#pragma once

// Closed-form F-invariants of diagonal and Fermat hypersurfaces: F-pure
// thresholds, the test ideal at the threshold, and the F-jumping numbers of
// Fermat hypersurfaces in (0,1].

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "finv/basep.hpp"
#include "finv/diagonal_form.hpp"
#include "finv/prime.hpp"
#include "finv/rational.hpp"

namespace finv {

/// For p > d: p = d*omega + a with 1 <= a < d. For p <= d: ell with
/// p^ell <= d < p^(ell+1). omega and a are p / d and p % d in either case.
struct FermatDecomposition {
  std::uint64_t degree = 0;
  Prime prime;
  std::uint64_t omega = 0;
  std::uint64_t a = 0;
  std::optional<std::uint64_t> ell;
};

FermatDecomposition decompose_fermat(std::uint64_t degree, Prime p);

enum class TestIdealTag { PrincipalF, Maximal, Unknown };

enum class TestIdealCase {
  FptIsOne,               // tau = (f)
  FptIsReciprocalSum,     // tau = m
  BelowMinimumLargePrime, // fpt < min{1, sum 1/d_i}, p > max d_i; tau = m
  None,
};

struct TestIdealClass {
  TestIdealTag tag = TestIdealTag::Unknown;
  TestIdealCase witness = TestIdealCase::None;
};

enum class JumpRegime { A1, SmallP, BigP, NoInfo };

struct JumpReport {
  Rational fpt;
  /// Jumping numbers in (fpt, 1], strictly increasing.
  std::vector<Rational> extra_jumps;
  /// True when these are provably all jumping numbers in (0,1].
  bool complete = false;
  JumpRegime regime = JumpRegime::A1;
  /// ((d+1) omega + ceil(2a/d)) / p when p < a(d-1).
  std::optional<Rational> candidate;
  FermatDecomposition decomposition;
};

/// The three inequalities that bracket the candidate jumping number. The
/// second and third are conditional; `*_applies` records whether their
/// hypothesis holds, and a non-applicable clause counts as holding.
struct BoundsCheck {
  bool window_holds = false;  // p < d(2 omega + ceil(2a/d) - 1) < 2p
  bool small_p_applies = false;
  bool small_p_holds = true;  // (d+1) omega + ceil(2a/d) <= p
  bool big_p_applies = false;
  bool big_p_holds = true;    // p < d(omega + a - 1) < 2p
  std::uint64_t candidate_numerator = 0;  // (d+1) omega + ceil(2a/d)

  bool all_hold() const { return window_holds && small_p_holds && big_p_holds; }
};

/// Threshold of f from its carry-free prefix L: sum 1/d_i when L is
/// infinite, otherwise sum of L-th truncations plus 1/p^L. Ignores u_i.
Rational fpt_diagonal(const DiagonalForm& form);

/// Closed form for the degree-d Fermat hypersurface in d variables.
Rational fpt_fermat(std::uint64_t degree, Prime p);

TestIdealClass classify_test_ideal_at_fpt(const DiagonalForm& form);

/// Jumping numbers of the degree-d Fermat hypersurface in (0,1]. Requires
/// p > d; throws UnsupportedRegimeError otherwise.
JumpReport fermat_jumps_unit_interval(std::uint64_t degree, Prime p);

/// gamma - 1 for gamma > 1 (jumping numbers are 1-periodic above 1).
/// Throws DomainError when gamma <= 1.
Rational shift_jump(const Rational& gamma);

/// Evaluates the bracketing inequalities for p = d*omega + a, a >= 2.
/// Throws ArgumentError if the decomposition is inconsistent or a < 2.
BoundsCheck bounds_check(std::uint64_t degree, Prime p, std::uint64_t omega, std::uint64_t a);

/// (d-1) * digit(1/d, p, 2) >= p + 1. Requires p > d > 2 and p mod d >= 2.
bool digits_trick_check(std::uint64_t degree, Prime p);

std::string_view to_string(TestIdealTag tag);
std::string_view to_string(TestIdealCase c);
std::string_view to_string(JumpRegime regime);

}  // namespace finv
