#include <gtest/gtest.h>

#include "finv/errors.hpp"
#include "finv/poly.hpp"

using namespace finv;

namespace {

const Prime p5(5);

PolyFp x() { return PolyFp::variable(2, p5, 0); }
PolyFp y() { return PolyFp::variable(2, p5, 1); }
PolyFp one() { return PolyFp::constant(2, p5, 1); }

}  // namespace

TEST(Poly, ArithmeticModP) {
  PolyFp a = x() + y();
  a = (x() + y());
  const PolyFp fifth = a.pow(5);
  // Freshman's dream in characteristic 5.
  EXPECT_EQ(fifth, x().pow(5) + y().pow(5));
  PolyFp b = x().scaled(3);
  b += x().scaled(2);
  EXPECT_TRUE(b.is_zero());
  PolyFp c = x();
  c -= x();
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(PolyFp::constant(2, p5, 10), PolyFp(2, p5));
}

TEST(Poly, PowerMatchesRepeatedProduct) {
  const PolyFp f = x().pow(2) + y().pow(3).scaled(2) + one();
  PolyFp r = one();
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(f.pow(i), r);
    r = r * f;
  }
}

TEST(Poly, DegreesAndComponents) {
  const std::vector<std::uint64_t> w{3, 2};
  const PolyFp f = x().pow(2) + y().pow(3);
  EXPECT_TRUE(f.is_homogeneous(w));
  EXPECT_FALSE(f.is_homogeneous({1, 1}));
  EXPECT_EQ(f.max_degree(w), 6u);
  const PolyFp g = f + x();
  const auto parts = g.homogeneous_components(w);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.at(3), x());
  EXPECT_EQ(g.min_degree(w), 3u);
}

TEST(Poly, SerializeAndPrint) {
  const PolyFp f = x().pow(3).scaled(2) * y() + y();
  const auto s = f.serialize();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(f.to_string(), "2*x1^3*x2 + x2");
  EXPECT_EQ(PolyFp(2, p5).to_string(), "0");
}

TEST(Ideal, MonomialMembership) {
  IdealFp xi(2, p5);
  xi.add_generator(x());
  EXPECT_TRUE(ideal_contains(xi, x().pow(2)));
  EXPECT_TRUE(ideal_contains(xi, x() * y() + x().scaled(4)));
  EXPECT_FALSE(ideal_contains(xi, y()));
  EXPECT_FALSE(ideal_contains(xi, one()));
  IdealFp x2(2, p5);
  x2.add_generator(x().pow(2));
  EXPECT_FALSE(ideal_contains(x2, x()));
}

TEST(Ideal, MaximalAndPrincipal) {
  const auto m = IdealFp::maximal(2, p5);
  EXPECT_TRUE(ideal_contains(m, x() + y()));
  EXPECT_FALSE(ideal_contains(m, one()));
  const PolyFp f = x().pow(2) + y().pow(3);
  const auto principal = IdealFp::principal(f, {3, 2});
  EXPECT_TRUE(ideal_contains(principal, f * (x() + y().pow(2))));
  EXPECT_FALSE(ideal_contains(principal, x().pow(2)));
}

TEST(Ideal, InhomogeneousBoundedSearch) {
  IdealFp i(2, p5);
  i.add_generator(x() - one());
  EXPECT_EQ(ideal_membership(i, x().pow(3) - one()), Membership::Member);
  EXPECT_EQ(ideal_membership(i, one(), MembershipOptions{2, {}}), Membership::Inconclusive);
  EXPECT_THROW(ideal_contains(i, one(), MembershipOptions{2, {}}), InconclusiveError);
}

TEST(Ideal, Equality) {
  IdealFp a(2, p5), b(2, p5);
  a.add_generator(x());
  a.add_generator(y());
  b.add_generator(x() + y());
  b.add_generator(x() - y());
  EXPECT_TRUE(ideals_equal(a, b));
  b.add_generator(PolyFp(2, p5));
  EXPECT_EQ(b.generators().size(), 2u);
  IdealFp c(2, p5);
  c.add_generator(x());
  EXPECT_FALSE(ideals_equal(a, c));
}

TEST(Ideal, TruncationIsInconclusiveAboveCap) {
  IdealFp a(2, p5);
  a.add_generator(x());
  a.set_degree_cap(1);
  EXPECT_TRUE(ideal_contains(a, x()));
  EXPECT_EQ(ideal_membership(a, y().pow(2)), Membership::Inconclusive);
}

TEST(Ideal, ColumnBudget) {
  const auto m = IdealFp::maximal(2, p5);
  MembershipOptions tight;
  tight.budget.max_columns = 3;
  EXPECT_THROW(ideal_membership(m, x().pow(40) * y().pow(40), tight), ResourceError);
}

TEST(Monomials, CountInGradedSlice) {
  EXPECT_EQ(monomials_of_degree({1, 1, 1}, 3).size(), 10u);
  EXPECT_EQ(monomials_of_degree({3, 2}, 6).size(), 2u);
  EXPECT_EQ(monomials_of_degree({3, 2}, 1).size(), 0u);
}
