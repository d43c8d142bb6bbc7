#include <gtest/gtest.h>

#include <random>

#include "mwp/choice_poly.hpp"

namespace {

using namespace mwp;
using enum MwpInf;

ChoicePolynomial P(std::vector<Monomial> ms) { return ChoicePolynomial(std::move(ms)); }

// Pointwise equality over every assignment of `reg`.
bool same_function(const ChoicePolynomial& a, const ChoicePolynomial& b,
                   const ChoiceDomainRegistry& reg) {
  bool same = true;
  reg.for_each([&](const Assignment& x) {
    same = a.eval(x) == b.eval(x);
    return same;
  });
  return same;
}

ChoicePolynomial random_poly(std::mt19937& rng, const ChoiceDomainRegistry& reg, int max_terms) {
  std::uniform_int_distribution<int> count(0, max_terms), scalar(0, 4), coin(0, 1);
  std::vector<Monomial> ms;
  for (int k = count(rng); k > 0; --k) {
    Monomial m{static_cast<MwpInf>(scalar(rng)), {}};
    for (std::uint32_t i = 0; i < reg.size(); ++i)
      if (coin(rng))
        m.deltas.push_back({i, std::uniform_int_distribution<std::uint32_t>(0, reg.cardinality(i) - 1)(rng)});
    ms.push_back(std::move(m));
  }
  return P(std::move(ms));
}

TEST(Registry, EnumeratesLexicographically) {
  ChoiceDomainRegistry reg;
  EXPECT_EQ(reg.allocate(2), 0u);
  EXPECT_EQ(reg.allocate(3), 1u);
  std::vector<Assignment> seen;
  reg.for_each([&](const Assignment& a) {
    seen.push_back(a);
    return true;
  });
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen.front(), (Assignment{0, 0}));
  EXPECT_EQ(seen[1], (Assignment{0, 1}));
  EXPECT_EQ(seen.back(), (Assignment{1, 2}));
  EXPECT_EQ(reg.assignment_count(), 6u);
  EXPECT_TRUE(reg.valid({1, 2}));
  EXPECT_FALSE(reg.valid({2, 0}));
  EXPECT_FALSE(reg.valid({0}));
}

TEST(Registry, EmptyHasOneAssignment) {
  ChoiceDomainRegistry reg;
  int n = 0;
  reg.for_each([&](const Assignment& a) {
    EXPECT_TRUE(a.empty());
    ++n;
    return true;
  });
  EXPECT_EQ(n, 1);
}

TEST(Delta, Helpers) {
  const DeltaList a{{0, 1}}, b{{0, 1}, {2, 0}}, c{{0, 2}};
  EXPECT_TRUE(delta_subset(a, b));
  EXPECT_FALSE(delta_subset(b, a));
  EXPECT_FALSE(delta_merge(a, c));
  EXPECT_EQ(delta_merge(a, DeltaList{{2, 0}}), b);
  EXPECT_TRUE(delta_matches(b, {1, 5, 0}));
  EXPECT_FALSE(delta_matches(b, {1, 5, 1}));
  EXPECT_THROW(delta_matches(b, {1}), std::out_of_range);
  EXPECT_EQ(to_string(b), "δ(1,0).δ(0,2)");
}

TEST(Poly, AddExamples) {
  const auto p = P({{kM, {{1, 0}}}});
  EXPECT_EQ(add(p, {}), p);
  EXPECT_EQ(add(P({{kM, {{1, 0}}}}), P({{kP, {{1, 0}}}})), P({{kP, {{1, 0}}}}));
  const auto s = add(ChoicePolynomial::constant(kM), P({{kP, {{1, 1}}}}));
  EXPECT_EQ(s.eval({0, 1}), kP);
  EXPECT_EQ(s.eval({0, 0}), kM);
  EXPECT_EQ(s.monomials().size(), 2u);
}

TEST(Poly, MulExamples) {
  const auto p = P({{kM, {{1, 0}}}, {kM, {{1, 1}}}});
  EXPECT_EQ(mul(p, ChoicePolynomial::constant(kM)), p);
  EXPECT_EQ(mul(p, P({{kP, {{1, 0}}}})), P({{kP, {{1, 0}}}}));
  // 0 x inf = inf.
  const auto inf = P({{kInf, {{1, 1}}}});
  EXPECT_EQ(mul(inf, ChoicePolynomial{}), inf);
  EXPECT_EQ(mul(ChoicePolynomial{}, inf), inf);
}

TEST(Poly, ReduceDropsSubsumedAndZero) {
  const auto p = P({{kP, {}}, {kW, {{0, 1}}}, {kZero, {{0, 2}}}});
  EXPECT_EQ(p, P({{kP, {}}}));
  const auto q = P({{kM, {}}, {kP, {{0, 1}}}});
  EXPECT_EQ(q.monomials().size(), 2u);
}

TEST(Poly, ToString) {
  EXPECT_EQ(ChoicePolynomial{}.to_string(), "0");
  EXPECT_EQ(P({{kM, {}}, {kInf, {{0, 1}}}}).to_string(), "m+i.δ(1,0)");
}

// Multiplying an ordered list by one monomial does not keep it ordered:
// δ(0,2).δ(0,9) < δ(0,3), yet times δ(0,2) the second becomes δ(0,2).δ(0,3),
// which sorts first.
TEST(Poly, ProductByMonomialCanReorder) {
  const Monomial a{kM, {{2, 0}, {9, 0}}}, b{kM, {{3, 0}}}, q{kM, {{2, 0}}};
  ASSERT_TRUE(monomial_less(a, b));
  const auto aq = monomial_mul(a, q), bq = monomial_mul(b, q);
  ASSERT_TRUE(aq && bq);
  EXPECT_TRUE(monomial_less(*bq, *aq));
  const auto p = P({a, b});
  EXPECT_EQ(mul(p, P({q})), mul_naive(p, P({q})));
}

TEST(Poly, MergeProductMatchesNaiveAndPointwise) {
  std::mt19937 rng(99);
  for (int round = 0; round < 500; ++round) {
    const ChoiceDomainRegistry reg({3, 2, 3, 1});
    const auto a = random_poly(rng, reg, 5), b = random_poly(rng, reg, 5);
    const auto m = mul(a, b);
    ASSERT_EQ(m, mul_naive(a, b));
    reg.for_each([&](const Assignment& x) {
      EXPECT_EQ(m.eval(x), mul(a.eval(x), b.eval(x)));
      EXPECT_EQ(add(a, b).eval(x), add(a.eval(x), b.eval(x)));
      return true;
    });
  }
}

TEST(Poly, MonomialsStaySorted) {
  std::mt19937 rng(5);
  const ChoiceDomainRegistry reg({3, 3, 3});
  for (int round = 0; round < 200; ++round) {
    const auto p = mul(random_poly(rng, reg, 4), random_poly(rng, reg, 4));
    EXPECT_TRUE(std::is_sorted(p.monomials().begin(), p.monomials().end(), monomial_less));
  }
}

TEST(Poly, SimplifyIsCanonical) {
  std::mt19937 rng(17);
  const ChoiceDomainRegistry reg({3, 2, 3});
  for (int round = 0; round < 300; ++round) {
    const auto a = random_poly(rng, reg, 6);
    const auto s = a.simplify(reg);
    ASSERT_TRUE(same_function(a, s, reg));
    EXPECT_EQ(s.simplify(reg), s);
    // Same function through a different route: reorder by adding pieces.
    ChoicePolynomial b;
    for (auto it = a.monomials().rbegin(); it != a.monomials().rend(); ++it) b = add(b, P({*it}));
    EXPECT_EQ(b.simplify(reg), s);
  }
}

TEST(Poly, SimplifyCollapsesFullFans) {
  const ChoiceDomainRegistry reg({3});
  const auto p = P({{kP, {{0, 0}}}, {kP, {{0, 1}}}, {kP, {{0, 2}}}});
  EXPECT_EQ(p.simplify(reg), ChoicePolynomial::constant(kP));
  const ChoiceDomainRegistry one({1, 3});
  EXPECT_EQ(P({{kW, {{0, 0}, {1, 2}}}}).simplify(one), P({{kW, {{1, 2}}}}));
}

TEST(Poly, AtLeastAndInfinityPart) {
  const auto p = P({{kM, {}}, {kW, {{0, 1}}}, {kInf, {{0, 2}}}});
  EXPECT_TRUE(p.has_infinity());
  EXPECT_EQ(p.infinity_part(), P({{kInf, {{0, 2}}}}));
  EXPECT_EQ(p.at_least(kW, kInf), P({{kInf, {{0, 1}}}, {kInf, {{0, 2}}}}));
}

TEST(PolyMatrix, ExpandInverseRoundTrip) {
  const ChoiceDomainRegistry reg({3, 2});
  PolyMatrix m(2);
  m.at(0, 0) = P({{kM, {}}, {kP, {{0, 1}}}});
  m.at(1, 0) = P({{kInf, {{1, 1}}}});
  m.at(1, 1) = ChoicePolynomial::constant(kM);
  const auto table = iso_expand(m, reg);
  ASSERT_EQ(table.size(), 6u);
  EXPECT_EQ(table[3].first, (Assignment{1, 1}));
  EXPECT_EQ(table[3].second, parse_mwp_matrix("p 0\ni m"));
  EXPECT_EQ(iso_inverse(table, reg), simplify(m, reg));
}

}  // namespace
