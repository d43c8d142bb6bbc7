#include <gtest/gtest.h>

#include "mwp/semiring.hpp"

namespace {

using namespace mwp;
using enum MwpInf;

TEST(Scalar, MulOfZeroIsZeroExceptInfinity) {
  EXPECT_EQ(mul(kZero, kP), kZero);
  EXPECT_EQ(mul(kZero, kInf), kInf);
  EXPECT_EQ(mul(Mwp::kZero, Mwp::kP), Mwp::kZero);
}

TEST(Scalar, AddIsMax) {
  EXPECT_EQ(add(kM, kW), kW);
  EXPECT_EQ(add(kP, kInf), kInf);
  EXPECT_EQ(mul(kW, kM), kW);
}

TEST(Scalar, CharRoundTrip) {
  for (MwpInf v : kAllMwpInf) EXPECT_EQ(mwpinf_from_char(to_char(v)), v);
  EXPECT_FALSE(mwpinf_from_char('x'));
  EXPECT_EQ(narrow(kInf), std::nullopt);
  EXPECT_EQ(narrow(kW), Mwp::kW);
}

TEST(Matrix, SumIsEntrywise) {
  const auto a = parse_mwp_matrix("m p\n0 m");
  const auto b = parse_mwp_matrix("m 0\nw m");
  EXPECT_EQ(add(a, b), parse_mwp_matrix("m p\nw m"));
  EXPECT_EQ(add(MwpMatrix::zero(2), b), b);
  EXPECT_EQ(add(a, a), a);
}

TEST(Matrix, Product) {
  const auto a = parse_mwp_matrix("m m\n0 p");
  EXPECT_EQ(mul(a, a), parse_mwp_matrix("m p\n0 p"));
  EXPECT_EQ(mul(MwpMatrix::identity(2), a), a);
  EXPECT_EQ(mul(MwpMatrix::zero(2), a), MwpMatrix::zero(2));
}

TEST(Matrix, InfinitySpreadsThroughZero) {
  const auto a = parse_mwp_matrix("i 0\n0 m");
  EXPECT_EQ(mul(a, MwpMatrix::zero(2)), parse_mwp_matrix("i i\n0 0"));
}

TEST(Matrix, DimensionMismatchThrows) {
  EXPECT_THROW(add(MwpMatrix(2), MwpMatrix(3)), DimensionError);
  EXPECT_THROW(mul(MwpMatrix(2), MwpMatrix(3)), DimensionError);
  MwpMatrix m(2);
  EXPECT_THROW(m.set_column(0, {kM}), DimensionError);
}

// Closure against explicit power sums 1 + M + ... + M^n.
TEST(Matrix, ClosureMatchesPowerSum) {
  std::uint32_t state = 12345;
  auto next = [&] { return (state = state * 1103515245u + 12345u) >> 16; };
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + next() % 4;
    MwpMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = static_cast<MwpInf>(next() % 5);
    auto acc = MwpMatrix::identity(n), power = MwpMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
      power = mul(power, m);
      acc = add(acc, power);
    }
    ASSERT_EQ(closure(m), acc);
  }
}

TEST(Matrix, ClosureExamples) {
  EXPECT_EQ(closure(parse_mwp_matrix("0 m\n0 0")), parse_mwp_matrix("m m\n0 m"));
  EXPECT_EQ(closure(parse_mwp_matrix("0 p\nm 0")), parse_mwp_matrix("p p\np p"));
}

TEST(Matrix, RenderParseRoundTrip) {
  const auto m = parse_mwp_matrix("m p 0\n0 i w\n0 0 m");
  EXPECT_EQ(parse_mwp_matrix(render(m)), m);
}

TEST(Matrix, ParseRejectsGarbage) {
  EXPECT_ANY_THROW(parse_mwp_matrix("m q\n0 m"));
  EXPECT_ANY_THROW(parse_mwp_matrix("m m\n0"));
}

}  // namespace
