#include "finv/invariants.hpp"

#include <stdexcept>
#include <string>

#include "finv/errors.hpp"

namespace finv {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace

FermatDecomposition decompose_fermat(std::uint64_t degree, Prime p) {
  if (degree < 2) throw ArgumentError("Fermat degree must be at least 2");
  FermatDecomposition out{degree, p, p / degree, p % degree, std::nullopt};
  if (p.value() <= degree) {
    std::uint64_t ell = 0;
    std::uint64_t power = 1;
    while (power <= degree / p.value()) {
      power *= p.value();
      ++ell;
    }
    out.ell = ell;
  }
  return out;
}

Rational fpt_diagonal(const DiagonalForm& form) {
  const auto deltas = form.reciprocal_exponents();
  const Prime p = form.prime();
  const auto prefix = carry_free_prefix(deltas, p);
  if (prefix.infinite) return form.reciprocal_sum();
  Rational sum = 0;
  for (const auto& delta : deltas) sum += truncate(delta, p, prefix.length);
  return sum + Rational(BigInt(1), pow_big(p, prefix.length));
}

Rational fpt_fermat(std::uint64_t degree, Prime p) {
  const auto dec = decompose_fermat(degree, p);
  if (dec.ell) return Rational(BigInt(1), pow_big(p, *dec.ell));
  return 1 - ratio(dec.a - 1, p);
}

TestIdealClass classify_test_ideal_at_fpt(const DiagonalForm& form) {
  const Rational fpt = fpt_diagonal(form);
  const Rational sum = form.reciprocal_sum();
  if (fpt == 1) return {TestIdealTag::PrincipalF, TestIdealCase::FptIsOne};
  if (fpt == sum) return {TestIdealTag::Maximal, TestIdealCase::FptIsReciprocalSum};
  const Rational cap = sum < 1 ? sum : Rational(1);
  if (fpt < cap && form.prime().value() > form.max_exponent()) {
    return {TestIdealTag::Maximal, TestIdealCase::BelowMinimumLargePrime};
  }
  return {TestIdealTag::Unknown, TestIdealCase::None};
}

JumpReport fermat_jumps_unit_interval(std::uint64_t degree, Prime p) {
  const auto dec = decompose_fermat(degree, p);
  if (p.value() <= degree) {
    throw UnsupportedRegimeError("higher jumping numbers need p > d (got d=" +
                                 std::to_string(degree) + ", p=" + std::to_string(p.value()) + ")");
  }
  JumpReport report;
  report.decomposition = dec;
  report.fpt = fpt_fermat(degree, p);
  if (dec.a == 1) {
    report.regime = JumpRegime::A1;
    report.complete = true;
    return report;
  }

  const auto bounds = bounds_check(degree, p, dec.omega, dec.a);
  if (!bounds.all_hold()) {
    throw std::logic_error("bracketing inequalities failed for d=" + std::to_string(degree) +
                           ", p=" + std::to_string(p.value()));
  }
  const std::uint64_t threshold = dec.a * (degree - 1);
  // a >= 2 and d - 1 >= 2, so a(d-1) is composite and never equals p.
  if (threshold == p.value()) throw std::logic_error("p = a(d-1) with p prime");

  if (p.value() < threshold) {
    Rational candidate = ratio(bounds.candidate_numerator, p);
    report.candidate = candidate;
    if (candidate == 1) {
      report.regime = JumpRegime::NoInfo;
    } else {
      report.regime = JumpRegime::SmallP;
      report.extra_jumps.push_back(candidate);
    }
    report.complete = false;
  } else {
    report.regime = JumpRegime::BigP;
    report.complete = true;
  }
  report.extra_jumps.push_back(Rational(1));
  for (const auto& jump : report.extra_jumps) {
    if (!(report.fpt < jump)) throw std::logic_error("jump list not above the threshold");
  }
  return report;
}

Rational shift_jump(const Rational& gamma) {
  if (gamma <= 1) throw DomainError("shift_jump needs gamma > 1, got " + to_string(gamma));
  return gamma - 1;
}

BoundsCheck bounds_check(std::uint64_t degree, Prime p, std::uint64_t omega, std::uint64_t a) {
  if (degree * omega + a != p.value() || a >= degree) {
    throw ArgumentError("p != d*omega + a with 1 <= a < d");
  }
  if (a < 2) throw ArgumentError("bounds need a >= 2");
  const std::uint64_t d = degree;
  const std::uint64_t pv = p.value();
  const std::uint64_t c = ceil_div(2 * a, d);

  BoundsCheck out;
  out.candidate_numerator = (d + 1) * omega + c;
  const std::uint64_t window = d * (2 * omega + c - 1);
  out.window_holds = pv < window && window < 2 * pv;

  const std::uint64_t threshold = a * (d - 1);
  out.small_p_applies = pv < threshold;
  if (out.small_p_applies) out.small_p_holds = out.candidate_numerator <= pv;
  out.big_p_applies = pv > threshold;
  if (out.big_p_applies) {
    const std::uint64_t span = d * (omega + a - 1);
    out.big_p_holds = pv < span && span < 2 * pv;
  }
  return out;
}

bool digits_trick_check(std::uint64_t degree, Prime p) {
  if (!(p.value() > degree && degree > 2) || p % degree < 2) {
    throw HypothesisError("digits trick needs p > d > 2 and p mod d >= 2");
  }
  const auto second = digit(make_rational(1, static_cast<std::int64_t>(degree)), p, 2);
  return (degree - 1) * second >= p.value() + 1;
}

std::string_view to_string(TestIdealTag tag) {
  switch (tag) {
    case TestIdealTag::PrincipalF: return "PRINCIPAL_F";
    case TestIdealTag::Maximal: return "MAXIMAL";
    case TestIdealTag::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string_view to_string(TestIdealCase c) {
  switch (c) {
    case TestIdealCase::FptIsOne: return "fpt=1";
    case TestIdealCase::FptIsReciprocalSum: return "fpt=sum(1/d_i)";
    case TestIdealCase::BelowMinimumLargePrime: return "fpt<min(1,sum(1/d_i)),p>max(d_i)";
    case TestIdealCase::None: return "none";
  }
  return "none";
}

std::string_view to_string(JumpRegime regime) {
  switch (regime) {
    case JumpRegime::A1: return "A1";
    case JumpRegime::SmallP: return "SMALL_P";
    case JumpRegime::BigP: return "BIG_P";
    case JumpRegime::NoInfo: return "NO_INFO";
  }
  return "NO_INFO";
}

}  // namespace finv
