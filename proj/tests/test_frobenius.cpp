#include <random>

#include <gtest/gtest.h>

#include "finv/errors.hpp"
#include "finv/frobenius.hpp"
#include "finv/invariants.hpp"
#include "oracle.hpp"

using namespace finv;

namespace {

Rational q(long n, long d) { return make_rational(n, d); }

IdealFp ideal_from_oracle(const std::map<oracle::Exponent, oracle::Poly>& gens, std::size_t n, Prime p,
                          const std::vector<std::uint64_t>& weights) {
  IdealFp out(n, p, weights);
  for (const auto& [r, poly] : gens) {
    PolyFp g(n, p);
    for (const auto& [exp, c] : poly) g.add_term(exp, c);
    out.add_generator(g);
  }
  return out;
}

bool contains_all_variables(const IdealFp& ideal) {
  for (std::size_t i = 0; i < ideal.num_variables(); ++i) {
    if (!ideal_contains(ideal, PolyFp::variable(ideal.num_variables(), ideal.prime(), i))) return false;
  }
  return true;
}

}  // namespace

TEST(Nu, Examples) {
  EXPECT_EQ(nu(DiagonalForm(Prime(5), {2, 3}), 1), 3u);
  EXPECT_EQ(nu(DiagonalForm(Prime(7), {2, 3}), 1), 5u);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::uint64_t d = 2; d <= 9; ++d) {
      for (std::uint64_t e = 1; e <= 3; ++e) {
        EXPECT_EQ(nu(DiagonalForm(Prime(p), {d}), e), (oracle::ipow(p, e) - 1) / d);
      }
    }
  }
}

TEST(Nu, MatchesExpansionOracle) {
  const std::vector<std::vector<std::uint64_t>> forms{{2, 3}, {2, 2}, {3, 3}, {2, 5}, {2, 3, 4}, {3, 3, 3}};
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (const auto& d : forms) {
      for (std::uint64_t e = 1; e <= (d.size() == 2 ? 2u : 1u); ++e) {
        const DiagonalForm form(Prime(p), d);
        const auto expected = oracle::nu(d, p, e);
        EXPECT_EQ(nu(form, e), expected) << "p=" << p << " e=" << e;
        EXPECT_EQ(nu_by_enumeration(form, e), expected);
      }
    }
  }
}

TEST(Nu, DigitDpMatchesEnumeration) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    for (std::uint64_t a = 2; a <= 7; ++a) {
      for (std::uint64_t b = a; b <= 7; ++b) {
        for (std::uint64_t c = b; c <= 7; ++c) {
          const DiagonalForm form(Prime(p), {a, b, c});
          for (std::uint64_t e = 1; e <= 2; ++e) ASSERT_EQ(nu(form, e), nu_by_enumeration(form, e));
        }
      }
    }
  }
}

TEST(Nu, CoefficientIndependent) {
  std::mt19937 rng(4);
  for (std::uint64_t p : {3, 5, 7, 11}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::uint64_t> d{2 + rng() % 6, 2 + rng() % 6, 2 + rng() % 6};
      std::vector<std::uint64_t> u{1 + rng() % (p - 1), 1 + rng() % (p - 1), 1 + rng() % (p - 1)};
      EXPECT_EQ(nu(DiagonalForm(Prime(p), d, u), 2), nu(DiagonalForm(Prime(p), d), 2));
    }
  }
}

TEST(Nu, StateBudget) {
  Budget tiny;
  tiny.max_states = 10;
  tiny.max_terms = 10;
  EXPECT_THROW(nu(DiagonalForm(Prime(13), {2, 3, 5}), 4, tiny), ResourceError);
  EXPECT_THROW(nu_by_enumeration(DiagonalForm(Prime(13), {2, 3, 5}), 4, tiny), ResourceError);
}

TEST(Bracket, ContainsFpt) {
  const DiagonalForm cusp5(Prime(5), {2, 3});
  EXPECT_EQ(fpt_bracket(cusp5, 1), std::make_pair(q(3, 5), q(4, 5)));
  const DiagonalForm cusp7(Prime(7), {2, 3});
  const auto [lo, hi] = fpt_bracket(cusp7, 2);
  EXPECT_LT(lo, q(5, 6));
  EXPECT_LE(q(5, 6), hi);
  EXPECT_EQ(hi - lo, q(1, 49));
}

TEST(Bracket, SingleVariableConverges) {
  const DiagonalForm form(Prime(3), {5});
  Rational previous_width = 1;
  for (std::uint64_t e = 1; e <= 8; ++e) {
    const auto [lo, hi] = fpt_bracket(form, e);
    EXPECT_LT(lo, q(1, 5));
    EXPECT_LE(q(1, 5), hi);
    EXPECT_LT(hi - lo, previous_width);
    previous_width = hi - lo;
  }
}

TEST(Expansion, MatchesOracle) {
  const DiagonalForm form(Prime(5), {2, 3}, {2, 3});
  for (std::uint64_t n = 0; n <= 12; ++n) {
    const auto expected = oracle::power(oracle::diagonal({2, 3}, {2, 3}, 5), n, 2, 5);
    const PolyFp got = expand_power(form, n);
    ASSERT_EQ(got.size(), expected.size());
    for (const auto& [exp, c] : expected) EXPECT_EQ(got.terms().at(exp), c);
  }
}

TEST(Generators, MatchOracleIdeal) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (const auto& d : std::vector<std::vector<std::uint64_t>>{{2, 3}, {3, 3, 3}, {2, 4}}) {
      const DiagonalForm form(Prime(p), d);
      const auto f = oracle::diagonal(d, {}, p);
      for (std::uint64_t e = 1; e <= 2; ++e) {
        for (std::uint64_t n = 0; n <= oracle::ipow(p, e) + 2; ++n) {
          const auto expected = ideal_from_oracle(
              oracle::coefficient_generators(oracle::power(f, n, d.size(), p), p, e), d.size(), Prime(p), form.weights());
          ASSERT_TRUE(ideals_equal(pideal_generators(form, n, e), expected)) << "p=" << p << " e=" << e << " N=" << n;
        }
      }
    }
  }
}

TEST(Generators, Examples) {
  const DiagonalForm cusp(Prime(5), {2, 3});
  const auto top = pideal_generators(cusp, 25, 2);
  ASSERT_EQ(top.generators().size(), 1u);
  EXPECT_EQ(top.generators()[0], to_poly(cusp));
  EXPECT_TRUE(pideal_generators(cusp, 0, 1).has_unit_generator());
  EXPECT_TRUE(contains_all_variables(pideal_generators(cusp, 4, 1)));
}

TEST(Generators, TermBudget) {
  GeneratorOptions options;
  options.budget.max_terms = 5;
  EXPECT_THROW(pideal_generators(DiagonalForm(Prime(7), {2, 3, 4}), 30, 2, options), ResourceError);
}

TEST(FrobeniusPower, Examples) {
  const Prime p(5);
  IdealFp xi(2, p);
  xi.add_generator(PolyFp::variable(2, p, 0));
  EXPECT_TRUE(frobenius_power_membership(PolyFp::variable(2, p, 0).pow(25), xi, 2));
  EXPECT_FALSE(frobenius_power_membership(PolyFp::variable(2, p, 0), xi, 1));
  const DiagonalForm cusp(p, {2, 3});
  const auto m = IdealFp::maximal(2, p, cusp.weights());
  EXPECT_TRUE(frobenius_power_membership(to_poly(cusp).pow(4), m, 1));
  EXPECT_FALSE(frobenius_power_membership(to_poly(cusp).pow(3), m, 1));
}

TEST(TestIdeal, AtOneIsPrincipal) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (const auto& d : std::vector<std::vector<std::uint64_t>>{{2, 3}, {3, 3, 3}, {2, 5}}) {
      const DiagonalForm form(Prime(p), d);
      const auto t = test_ideal(form, 1);
      EXPECT_EQ(classify_ideal(t.ideal, form), IdealShape::PrincipalF);
    }
  }
}

TEST(TestIdeal, CuspAtFptIsMaximal) {
  const DiagonalForm cusp(Prime(5), {2, 3});
  const auto t = test_ideal(cusp, q(4, 5));
  EXPECT_EQ(t.level, 1u);
  EXPECT_EQ(t.power, 4u);
  EXPECT_FALSE(t.stabilized_heuristically);
  EXPECT_EQ(classify_ideal(t.ideal, cusp), IdealShape::Maximal);
}

TEST(TestIdeal, SmallParameterIsUnit) {
  const DiagonalForm cusp(Prime(7), {2, 3});
  const auto t = test_ideal(cusp, q(1, 49));
  EXPECT_EQ(classify_ideal(t.ideal, cusp), IdealShape::Unit);
  EXPECT_THROW(test_ideal(cusp, Rational(0)), DomainError);
}

TEST(TestIdeal, HeuristicStabilization) {
  const DiagonalForm cusp(Prime(7), {2, 3});
  const auto t = test_ideal(cusp, q(5, 6));
  EXPECT_TRUE(t.stabilized_heuristically);
  EXPECT_EQ(classify_ideal(t.ideal, cusp), IdealShape::Maximal);
}

TEST(TestIdeal, StabilizationSoundAtPPowerDenominators) {
  for (std::uint64_t p : {3, 5}) {
    const DiagonalForm form(Prime(p), {2, 3});
    for (std::uint64_t m = 1; m <= p * p; ++m) {
      const Rational lambda(BigInt(m), BigInt(p * p));
      TestIdealOptions at, next;
      at.e_hint = 2;
      next.e_hint = 3;
      ASSERT_TRUE(ideals_equal(test_ideal(form, lambda, at).ideal, test_ideal(form, lambda, next).ideal))
          << "p=" << p << " m=" << m;
    }
  }
}

TEST(TestIdeal, RightContinuityAtFpt) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (const auto& d : std::vector<std::vector<std::uint64_t>>{{2, 3}, {2, 2}, {3, 3, 3}, {2, 4}}) {
      const DiagonalForm form(Prime(p), d);
      const Rational c = fpt_diagonal(form);
      const int e = p_power_exponent_of_denominator(c, Prime(p));
      if (e < 0 || e > 2) continue;
      TestIdealOptions options;
      options.e_hint = std::max(e, 1);
      const auto level = options.e_hint;
      EXPECT_NE(classify_ideal(test_ideal(form, c, options).ideal, form), IdealShape::Unit);
      const Rational below = c - Rational(BigInt(1), pow_big(p, level));
      if (below > 0) EXPECT_EQ(classify_ideal(test_ideal(form, below, options).ideal, form), IdealShape::Unit);
    }
  }
}

TEST(TestIdeal, ExponentDivisibleByPCanGiveSmallerIdeal) {
  // Over F_3, x^2 + y^6 is the cusp in x and y^2, so tau at 2/3 is (x, y^2).
  const DiagonalForm form(Prime(3), {2, 6});
  EXPECT_EQ(fpt_diagonal(form), q(2, 3));
  const Prime p(3);
  IdealFp expected(2, p, form.weights());
  expected.add_generator(PolyFp::variable(2, p, 0));
  expected.add_generator(PolyFp::variable(2, p, 1).pow(2));
  for (std::uint64_t e = 1; e <= 3; ++e) {
    TestIdealOptions options;
    options.e_hint = e;
    const auto t = test_ideal(form, q(2, 3), options);
    EXPECT_TRUE(ideals_equal(t.ideal, expected)) << "e=" << e;
    EXPECT_EQ(classify_ideal(t.ideal, form), IdealShape::Other);
  }
}

TEST(Classify, Shapes) {
  const DiagonalForm cusp(Prime(5), {2, 3});
  const auto w = cusp.weights();
  EXPECT_EQ(classify_ideal(IdealFp::maximal(2, Prime(5), w), cusp), IdealShape::Maximal);
  EXPECT_EQ(classify_ideal(IdealFp::principal(to_poly(cusp), w), cusp), IdealShape::PrincipalF);
  IdealFp xi(2, Prime(5), w);
  xi.add_generator(PolyFp::variable(2, Prime(5), 0));
  EXPECT_EQ(classify_ideal(xi, cusp), IdealShape::Other);
}

TEST(NoGathering, Examples) {
  EXPECT_FALSE(nogathering_member(6, Prime(11), 1, 9, 0));
  EXPECT_TRUE(nogathering_member(6, Prime(11), 2, 11 * 8 + 10, 5));
  EXPECT_FALSE(nogathering_member(6, Prime(11), 1, 0, 0));
  EXPECT_THROW(nogathering_member(4, Prime(2), 1, 3, 0), HypothesisError);
  EXPECT_THROW(nogathering_member(9, Prime(3), 1, 3, 0), HypothesisError);
}

TEST(NoGathering, MatchesLinearAlgebraOnProperIdeals) {
  for (std::uint64_t d = 2; d <= 4; ++d) {
    for (std::uint64_t p : {3, 5, 7}) {
      if (d == p) continue;
      const DiagonalForm form = DiagonalForm::fermat(d, Prime(p));
      const std::uint64_t top = nu(form, 1);
      for (std::uint64_t n = top + 1; n <= p * d; ++n) {
        const auto gens = pideal_generators(form, n, 1);
        for (std::size_t i = 0; i < d; ++i) {
          ASSERT_EQ(nogathering_member(d, Prime(p), 1, n, i),
                    ideal_contains(gens, PolyFp::variable(d, Prime(p), i)))
              << "d=" << d << " p=" << p << " N=" << n << " i=" << i;
        }
      }
    }
  }
}

TEST(Projection, Examples) {
  EXPECT_EQ(projection_ideal_member(DiagonalForm(Prime(5), {2, 3}), 1, 0), ProjectionVerdict::Member);
  EXPECT_EQ(projection_power(DiagonalForm(Prime(5), {2, 3}), 1), 4u);
  EXPECT_EQ(projection_ideal_member(DiagonalForm(Prime(3), {2, 3}), 2, 0), ProjectionVerdict::DigitSumTooLarge);
  EXPECT_THROW(projection_ideal_member(DiagonalForm(Prime(5), {5, 3}), 2, 0), HypothesisError);
  EXPECT_THROW(projection_ideal_member(DiagonalForm(Prime(3), {2, 3}), 1, 1), HypothesisError);
}

TEST(Projection, MemberVerdictIsConfirmedByOracle) {
  for (std::uint64_t p : {5, 7, 11}) {
    for (const auto& d : std::vector<std::vector<std::uint64_t>>{{2, 3}, {2, 4}, {3, 4}, {2, 3, 4}}) {
      const DiagonalForm form(Prime(p), d);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (projection_ideal_member(form, 1, i) != ProjectionVerdict::Member) continue;
        const auto gens = pideal_generators(form, projection_power(form, 1), 1);
        EXPECT_TRUE(ideal_contains(gens, PolyFp::variable(d.size(), Prime(p), i)));
      }
    }
  }
}

TEST(Variables, CoefficientIndependent) {
  std::mt19937 rng(11);
  for (std::uint64_t p : {5, 7}) {
    for (std::uint64_t n = 1; n <= 2 * p; ++n) {
      const std::vector<std::uint64_t> d{2, 3, 4};
      const std::vector<std::uint64_t> u{1 + rng() % (p - 1), 1 + rng() % (p - 1), 1 + rng() % (p - 1)};
      EXPECT_EQ(coefficient_ideal_variables(DiagonalForm(Prime(p), d, u), n, 1),
                coefficient_ideal_variables(DiagonalForm(Prime(p), d), n, 1));
    }
  }
}

TEST(Variables, AgreeWithFullGenerators) {
  for (std::uint64_t p : {3, 5, 7}) {
    const DiagonalForm form(Prime(p), {2, 3, 3});
    for (std::uint64_t n = 0; n <= 2 * p; ++n) {
      const auto gens = pideal_generators(form, n, 1);
      const auto vars = coefficient_ideal_variables(form, n, 1);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(vars[i], ideal_contains(gens, PolyFp::variable(3, Prime(p), i)));
      EXPECT_EQ(min_generator_degree(form, n, 1) == 0, gens.has_unit_generator());
    }
  }
}

TEST(JumpScan, Sextic) {
  const auto scan = jump_scan(6, Prime(11), 2);
  std::vector<Rational> at;
  for (const auto& s : scan) at.push_back(s.lambda);
  EXPECT_EQ(at, (std::vector<Rational>{q(7, 11), q(9, 11), Rational(1)}));
  EXPECT_TRUE(scan[0].fingerprint.maximal());
}

TEST(JumpScan, FptOneOnlyChangesAtOne) {
  const auto scan = jump_scan(3, Prime(7), 2);
  ASSERT_EQ(scan.size(), 1u);
  EXPECT_EQ(scan[0].lambda, 1);
}

TEST(JumpScan, QuarticAtSeven) {
  const auto scan = jump_scan(4, Prime(7), 2);
  ASSERT_FALSE(scan.empty());
  EXPECT_EQ(scan.front().lambda, q(5, 7));
  EXPECT_EQ(scan.back().lambda, 1);
  EXPECT_THROW(jump_scan(7, Prime(7), 1), UnsupportedRegimeError);
}
