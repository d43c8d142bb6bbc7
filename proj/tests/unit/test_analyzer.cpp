#include <gtest/gtest.h>

#include <map>
#include <set>

#include "jk_oracle.hpp"
#include "mwp/analyzer.hpp"
#include "mwp/frontend.hpp"
#include "program_gen.hpp"

namespace {

using namespace mwp;
using enum MwpInf;

ChoicePolynomial P(std::vector<Monomial> ms) { return ChoicePolynomial(std::move(ms)); }

FunctionResult main_of(const std::string& src, const AnalysisOptions& o = {}) {
  auto res = analyze_program(parse_program(src), o);
  return *res.find("main");
}

TEST(Expr, AdditionAllocatesOneTernaryChoice) {
  AnalysisContext ctx({"X1", "X2"});
  const auto v = analyze_expr(*parse_program("function main(){ X1 = X1 + X2; }")
                                   .functions[0].body[0].expr,
                              ctx);
  ASSERT_EQ(ctx.registry->cardinalities(), std::vector<std::uint32_t>{3});
  EXPECT_EQ(v[0], P({{kM, {{0, 0}}}, {kP, {{0, 1}}}, {kW, {{0, 2}}}}));
  EXPECT_EQ(v[1], P({{kP, {{0, 0}}}, {kM, {{0, 1}}}, {kW, {{0, 2}}}}));
}

TEST(Expr, MultiplicationIsWeakWithoutChoice) {
  AnalysisContext ctx({"X1", "X2", "X3"});
  const auto v = analyze_expr(*parse_program("function main(){ X1 = X1 * X2; }")
                                   .functions[0].body[0].expr,
                              ctx);
  EXPECT_EQ(ctx.registry->size(), 0u);
  EXPECT_EQ(v[0], ChoicePolynomial::constant(kW));
  EXPECT_EQ(v[1], ChoicePolynomial::constant(kW));
  EXPECT_TRUE(v[2].is_zero());
}

TEST(Expr, SameVariableMerges) {
  AnalysisContext ctx({"X1"});
  const auto v = analyze_expr(*parse_program("function main(){ X1 = X1 + X1; }")
                                   .functions[0].body[0].expr,
                              ctx);
  EXPECT_EQ(v[0], P({{kP, {{0, 0}}}, {kP, {{0, 1}}}, {kW, {{0, 2}}}}));
}

TEST(Expr, UnknownVariableThrows) {
  AnalysisContext ctx({"X1"});
  EXPECT_THROW(analyze_expr(*Expr::var("X9"), ctx), AnalysisError);
}

TEST(Cmd, CopyAssignment) {
  const auto f = main_of("function main(){ X1 = X2; }");
  EXPECT_EQ(f.variables, (std::vector<std::string>{"X2", "X1"}));
  // Rows/columns follow the variable order: X2 -> X1 is m, X1 -> X1 is 0.
  EXPECT_EQ(evaluate(f, {}), parse_mwp_matrix("m m\n0 0"));
}

TEST(Cmd, LoopExampleCells) {
  const auto f = main_of("function main(){ loop X3 { X2 = X1 + X2; } }");
  ASSERT_EQ(f.variables, (std::vector<std::string>{"X1", "X2", "X3"}));
  // Choice 0 puts p on X2 (the right operand), so its diagonal is p.
  EXPECT_EQ(evaluate(f, {0}).at(1, 1), kInf);
  EXPECT_EQ(evaluate(f, {1}), parse_mwp_matrix("m p 0\n0 m 0\n0 p m"));
  EXPECT_EQ(evaluate(f, {2}).at(1, 1), kInf);
  EXPECT_EQ(f.verdict, Verdict::kConditionallyBounded);
  EXPECT_EQ(f.sample, Assignment{1});
  EXPECT_EQ(f.blame, (std::vector<std::pair<std::string, std::string>>{{"X2", "X2"}}));
}

TEST(Cmd, WhileIsUnbounded) {
  const auto f = main_of("function main(){ while (X1 < X2) { X2 = X1 + X2; } }");
  EXPECT_EQ(f.verdict, Verdict::kUnbounded);
  EXPECT_FALSE(f.sample);
  for (std::uint32_t c = 0; c < 3; ++c) {
    const auto m = evaluate(f, {c});
    EXPECT_TRUE(m.at(0, 1) == kInf || m.at(1, 1) == kInf);
    EXPECT_FALSE(testkit::jk_derive(parse_program("function main(){ while (X1 < X2) { X2 = X1 + X2; } }")
                                        .functions[0].body,
                                    f.variables, {c}));
  }
}

TEST(Cmd, IfWithoutElseKeepsIdentity) {
  const auto f = main_of("function main(){ if (X1 < X2) { X1 = X2; } }");
  ASSERT_EQ(f.variables, (std::vector<std::string>{"X2", "X1"}));
  EXPECT_EQ(evaluate(f, {}), parse_mwp_matrix("m m\n0 m"));
}

TEST(Cmd, BranchOrderOnlyRelabels) {
  const auto a = main_of("function main(){ if (X1 < X2) { X1 = X1 + X2; } else { X2 = X2 + X3; } }");
  const auto b = main_of("function main(){ if (X1 < X2) { X2 = X2 + X3; } else { X1 = X1 + X2; } }");
  // Variable orders differ between the two, so compare flows by name.
  auto keyed = [](const FunctionResult& f, const Assignment& x) {
    const auto m = evaluate(f, x);
    std::map<std::pair<std::string, std::string>, int> flows;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        flows[{f.variables[i], f.variables[j]}] = static_cast<int>(m.at(i, j));
    return flows;
  };
  std::set<std::map<std::pair<std::string, std::string>, int>> ia, ib;
  a.registry->for_each([&](const Assignment& x) { return ia.insert(keyed(a, x)), true; });
  b.registry->for_each([&](const Assignment& x) { return ib.insert(keyed(b, x)), true; });
  EXPECT_EQ(ia, ib);
}

TEST(Program, StraightLineIsBounded) {
  const auto f = main_of("function main(){ X1 = X2 + X3; X2 = X1 * X3; X3 = X1 - X2; }");
  EXPECT_EQ(f.verdict, Verdict::kBounded);
  EXPECT_TRUE(f.graph.empty());
  EXPECT_EQ(f.sample, Assignment(2, 0));
}

TEST(Program, FastVerdictAgreesWithEnumeration) {
  for (std::uint32_t seed = 1; seed <= 150; ++seed) {
    testkit::ProgramGenerator gen(seed);
    const auto src = gen.single();
    const auto full = main_of(src);
    const auto fast = main_of(src, {.fast = true});
    EXPECT_EQ(full.verdict, fast.verdict) << src;
    EXPECT_EQ(full.sample, fast.sample) << src;
    EXPECT_EQ(full.matrix, fast.matrix);
  }
}

TEST(Program, EvaluateRejectsBadAssignments) {
  const auto f = main_of("function main(){ X1 = X1 + X2; }");
  EXPECT_THROW(evaluate(f, {3}), std::invalid_argument);
  EXPECT_THROW(evaluate(f, {}), std::invalid_argument);
}

TEST(Summary, CopyHasOneBehavior) {
  const auto res = analyze_program(parse_program(
      "function f(X1){ X2 = X1; return X2; } function main(){ X1 = f(X1); }"));
  const auto& s = res.find("f")->summary;
  ASSERT_EQ(s.behaviors.size(), 1u);
  EXPECT_EQ(s.behaviors[0].flows, std::vector<Mwp>{Mwp::kM});
}

TEST(Summary, AdditionHasThreeBehaviors) {
  const auto res = analyze_program(parse_program(
      "function f(X1, X2){ X3 = X1 + X2; return X3; } function main(){ X4 = f(X1, X2); }"));
  const auto& s = res.find("f")->summary;
  ASSERT_EQ(s.behaviors.size(), 3u);
  EXPECT_EQ(s.behaviors[0].flows, (std::vector<Mwp>{Mwp::kM, Mwp::kP}));
  EXPECT_EQ(s.behaviors[1].flows, (std::vector<Mwp>{Mwp::kP, Mwp::kM}));
  EXPECT_EQ(s.behaviors[2].flows, (std::vector<Mwp>{Mwp::kW, Mwp::kW}));
  EXPECT_EQ(s.behaviors[2].representative, Assignment{2});
  // The call allocates one choice with one value per behaviour.
  EXPECT_EQ(res.find("main")->registry->cardinalities(), std::vector<std::uint32_t>{3});
}

TEST(Summary, InliningExampleKeepsOnlyTheSafeChoice) {
  const auto res = analyze_program(parse_program(
      "function f(X1){ loop X1 { X2 = X2 + X3; } return X2; } "
      "function main(){ X3 = X1 + X2; X2 = X3 + X1; X1 = f(X2); }"));
  const auto& f = *res.find("f");
  ASSERT_EQ(f.summary.behaviors.size(), 1u);
  EXPECT_EQ(f.summary.behaviors[0].representative, Assignment{0});
  EXPECT_EQ(f.summary.behaviors[0].flows, std::vector<Mwp>{Mwp::kP});
  EXPECT_EQ(res.find("main")->registry->cardinalities(), (std::vector<std::uint32_t>{3, 3, 1}));
  EXPECT_EQ(res.find("main")->verdict, Verdict::kBounded);
}

TEST(Summary, EmptySummaryMakesCallerUnbounded) {
  const auto res = analyze_program(parse_program(
      "function g(X1){ loop X1 { X1 = X1 + X1; } return X1; } function main(){ X2 = g(X1); }"));
  EXPECT_TRUE(res.find("g")->summary.behaviors.empty());
  const auto& m = *res.find("main");
  EXPECT_EQ(m.verdict, Verdict::kUnbounded);
  EXPECT_EQ(m.registry->size(), 0u);
}

TEST(Oracle, SpecExamples) {
  const auto loop = parse_program("function main(){ loop X3 { X2 = X1 + X2; } }").functions[0].body;
  EXPECT_EQ(testkit::jk_derivable(loop, {"X1", "X2", "X3"}).size(), 1u);
  const auto add = parse_program("function main(){ X1 = X1 + X2; }").functions[0].body;
  EXPECT_EQ(testkit::jk_derivable(add, {"X1", "X2"}).size(), 3u);
  const auto copy = parse_program("function main(){ X1 = X2; }").functions[0].body;
  EXPECT_EQ(testkit::jk_derivable(copy, {"X1", "X2"}, {.weak_on_variables = true}).size(), 2u);
  EXPECT_EQ(testkit::jk_derivable(copy, {"X1", "X2"}).size(), 1u);
}

}  // namespace
