#include "mwp/analyzer.hpp"

#include <algorithm>

namespace mwp {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kBounded: return "bounded";
    case Verdict::kConditionallyBounded: return "conditionally-bounded";
    case Verdict::kUnbounded: return "unbounded";
  }
  return "?";
}

std::size_t AnalysisContext::index_of(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw AnalysisError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - variables.begin());
}

const FunctionResult* AnalysisResult::find(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

ChoiceVector scaled(const ChoiceVector& v, MwpInf s) {
  ChoiceVector out(v.size());
  const auto k = ChoicePolynomial::constant(s);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mul(k, v[i]);
  return out;
}

ChoiceVector sum(const ChoiceVector& a, const ChoiceVector& b) {
  ChoiceVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
  return out;
}

ChoiceVector guarded(const ChoiceVector& v, std::uint32_t index, std::uint32_t value) {
  ChoiceVector out(v.size());
  const auto d = ChoicePolynomial::delta(MwpInf::kM, {Delta{index, value}});
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mul(d, v[i]);
  return out;
}

// w on every variable of e (the original weak rule).
ChoiceVector weak(const Expr& e, const AnalysisContext& ctx) {
  ChoiceVector out(ctx.variables.size());
  for (const auto& v : expr_vars(e)) out[ctx.index_of(v)] = ChoicePolynomial::constant(MwpInf::kW);
  return out;
}

// A (x) B where B is the identity except for column j, which is `col`.
// Columns other than j still pick up the infinite parts of their row.
PolyMatrix times_column(const PolyMatrix& a, std::size_t j, const ChoiceVector& col) {
  const std::size_t n = a.size();
  PolyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ChoicePolynomial> infs, terms;
    for (std::size_t k = 0; k < n; ++k) {
      if (a.at(i, k).has_infinity()) infs.push_back(a.at(i, k).infinity_part());
      if (!a.at(i, k).is_zero() || col[k].has_infinity()) terms.push_back(mul(a.at(i, k), col[k]));
    }
    const ChoicePolynomial row_inf = sum(infs);
    const ChoicePolynomial cj = sum(terms);
    for (std::size_t c = 0; c < n; ++c)
      out.at(i, c) = c == j ? cj : (row_inf.is_zero() ? a.at(i, c) : add(a.at(i, c), row_inf));
  }
  return out;
}

PolyMatrix column_matrix(std::size_t n, std::size_t j, const ChoiceVector& col) {
  auto m = PolyMatrix::identity(n);
  m.set_column(j, col);
  return m;
}

// Column replacement of an assignment or call, if `c` is one.
std::optional<std::pair<std::size_t, ChoiceVector>> as_column(const Command& c,
                                                              AnalysisContext& ctx);

ChoicePolynomial exactly(const ChoicePolynomial& p, MwpInf scalar, MwpInf as) {
  std::vector<Monomial> out;
  for (const auto& m : p.monomials())
    if (m.scalar == scalar) out.push_back(Monomial{as, m.deltas});
  return ChoicePolynomial(std::move(out));
}

void record_infinity(const ChoicePolynomial& p, AnalysisContext& ctx) {
  for (const auto& m : p.monomials()) {
    if (m.scalar != MwpInf::kInf) continue;
    ctx.infinity_emitted = true;
    ctx.graph.insert(m.deltas);
  }
}

// Loop and while rules. `counter` is the loop variable, absent for while.
PolyMatrix iterate(const PolyMatrix& body, std::optional<std::size_t> counter,
                   AnalysisContext& ctx) {
  const std::size_t n = body.size();
  const PolyMatrix star = closure(body);
  PolyMatrix out = star;
  for (std::size_t j = 0; j < n; ++j) {
    // M*_jj is at least m, so "not m" is "at least w".
    auto diag = star.at(j, j).at_least(MwpInf::kW, MwpInf::kInf);
    record_infinity(diag, ctx);
    out.at(j, j) = add(out.at(j, j), diag);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (counter) {
      ChoicePolynomial col_p;
      for (std::size_t i = 0; i < n; ++i)
        col_p = add(col_p, exactly(star.at(i, j), MwpInf::kP, MwpInf::kP));
      out.at(*counter, j) = add(out.at(*counter, j), col_p);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        auto inf = exactly(star.at(i, j), MwpInf::kP, MwpInf::kInf);
        record_infinity(inf, ctx);
        out.at(i, j) = add(out.at(i, j), inf);
      }
    }
  }
  return out;
}

ChoiceVector call_column(const Command& c, AnalysisContext& ctx) {
  const std::size_t n = ctx.variables.size();
  if (!ctx.summaries) throw AnalysisError("no summaries available for call to '" + c.callee + "'");
  auto it = ctx.summaries->find(c.callee);
  if (it == ctx.summaries->end()) throw AnalysisError("call to unknown function '" + c.callee + "'");
  const FunctionSummary& s = it->second;
  if (s.params.size() != c.args.size())
    throw AnalysisError("arity mismatch in call to '" + c.callee + "'");

  ChoiceVector col(n);
  if (s.behaviors.empty()) {
    // No polynomial certificate for the callee: everything flowing into the
    // target is infinite, for every assignment.
    const auto inf = ChoicePolynomial::constant(MwpInf::kInf);
    for (const auto& a : c.args) col[ctx.index_of(a)] = inf;
    col[ctx.index_of(c.target)] = inf;
    record_infinity(inf, ctx);
    return col;
  }
  const auto j = ctx.registry->allocate(static_cast<std::uint32_t>(s.behaviors.size()));
  for (std::uint32_t b = 0; b < s.behaviors.size(); ++b) {
    std::vector<Mwp> at_row(n, Mwp::kZero);
    for (std::size_t q = 0; q < c.args.size(); ++q) {
      auto& slot = at_row[ctx.index_of(c.args[q])];
      slot = add(slot, s.behaviors[b].flows[q]);
    }
    for (std::size_t r = 0; r < n; ++r)
      if (at_row[r] != Mwp::kZero)
        col[r] = add(col[r], ChoicePolynomial::delta(widen(at_row[r]), {Delta{j, b}}));
  }
  return col;
}

std::optional<std::pair<std::size_t, ChoiceVector>> as_column(const Command& c,
                                                              AnalysisContext& ctx) {
  if (c.kind == Command::Kind::kAssign) {
    auto v = analyze_expr(*c.expr, ctx);
    return std::make_pair(ctx.index_of(c.target), std::move(v));
  }
  if (c.kind == Command::Kind::kCall) {
    auto v = call_column(c, ctx);
    return std::make_pair(ctx.index_of(c.target), std::move(v));
  }
  return std::nullopt;
}

}  // namespace

ChoiceVector analyze_expr(const Expr& e, AnalysisContext& ctx) {
  const std::size_t n = ctx.variables.size();
  switch (e.kind) {
    case Expr::Kind::kVar: {
      ChoiceVector v(n);
      v[ctx.index_of(e.name)] = ChoicePolynomial::constant(MwpInf::kM);
      return v;
    }
    case Expr::Kind::kMul:
      return weak(e, ctx);
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
      break;
  }
  // The choice point of this operator is numbered before its operands'.
  const auto j = ctx.registry->allocate(3);
  const auto v1 = analyze_expr(*e.lhs, ctx);
  const auto v2 = analyze_expr(*e.rhs, ctx);
  const auto b0 = sum(v1, scaled(v2, MwpInf::kP));
  const auto b1 = sum(scaled(v1, MwpInf::kP), v2);
  const auto b2 = weak(e, ctx);
  return sum(sum(guarded(b0, j, 0), guarded(b1, j, 1)), guarded(b2, j, 2));
}

PolyMatrix analyze_cmd(const Command& c, AnalysisContext& ctx) {
  const std::size_t n = ctx.variables.size();
  switch (c.kind) {
    case Command::Kind::kAssign:
    case Command::Kind::kCall: {
      auto [j, col] = *as_column(c, ctx);
      return column_matrix(n, j, col);
    }
    case Command::Kind::kIf: {
      auto a = analyze_body(c.body, ctx);
      auto b = analyze_body(c.else_body, ctx);
      return add(a, b);
    }
    case Command::Kind::kWhile:
      return iterate(analyze_body(c.body, ctx), std::nullopt, ctx);
    case Command::Kind::kLoop: {
      const auto l = ctx.index_of(c.target);
      return iterate(analyze_body(c.body, ctx), l, ctx);
    }
  }
  throw AnalysisError("unknown command");
}

PolyMatrix analyze_body(const std::vector<Command>& body, AnalysisContext& ctx) {
  const std::size_t n = ctx.variables.size();
  if (body.empty()) return PolyMatrix::identity(n);
  PolyMatrix acc = analyze_cmd(body.front(), ctx);
  for (std::size_t k = 1; k < body.size(); ++k) {
    if (auto col = as_column(body[k], ctx)) {
      acc = times_column(acc, col->first, col->second);
    } else {
      acc = mul(acc, analyze_cmd(body[k], ctx));
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

FunctionSummary summarize(const FunctionDecl& f, const FunctionResult& r,
                          const AnalysisOptions& options) {
  FunctionSummary s{f.name, f.params, {}};
  if (!f.ret) return s;
  const auto ret = static_cast<std::size_t>(
      std::find(r.variables.begin(), r.variables.end(), *f.ret) - r.variables.begin());
  std::size_t visited = 0;
  r.graph.for_each_uncovered([&](const Assignment& a) {
    if (++visited > options.summary_limit)
      throw AnalysisError("summary of '" + f.name + "' exceeds the enumeration budget");
    std::vector<Mwp> flows(f.params.size());
    for (std::size_t q = 0; q < f.params.size(); ++q) {
      auto v = narrow(r.matrix.at(q, ret).eval(a));
      if (!v) throw AnalysisError("internal: infinite flow at an uncovered assignment");
      flows[q] = *v;
    }
    auto same = [&](const Behavior& b) { return b.flows == flows; };
    if (std::none_of(s.behaviors.begin(), s.behaviors.end(), same))
      s.behaviors.push_back(Behavior{a, std::move(flows)});
    return true;
  });
  return s;
}

bool infinity_free(const MwpMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m.at(i, j) == MwpInf::kInf) return false;
  return true;
}

}  // namespace

FunctionResult analyze_function(const FunctionDecl& f, const SummaryTable& summaries,
                                const AnalysisOptions& options) {
  AnalysisContext ctx(collect_vars(f));
  ctx.summaries = &summaries;
  FunctionResult r;
  r.name = f.name;
  r.variables = ctx.variables;
  r.matrix = analyze_body(f.body, ctx);
  r.registry = ctx.registry;
  r.graph = ctx.graph;
  r.infinity_emitted = ctx.infinity_emitted;

  const std::size_t n = r.variables.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r.matrix.at(i, j).has_infinity()) r.blame.emplace_back(r.variables[i], r.variables[j]);

  const auto& reg = *r.registry;
  if (!r.infinity_emitted) {
    r.verdict = Verdict::kBounded;
    r.sample = Assignment(reg.size(), 0);
  } else if (!options.fast && reg.assignment_count() <= options.enumeration_limit) {
    reg.for_each([&](const Assignment& a) {
      if (!infinity_free(evaluate(r.matrix, a))) return true;
      r.sample = a;
      return false;
    });
    r.verdict = r.sample ? Verdict::kConditionallyBounded : Verdict::kUnbounded;
  } else if (r.graph.is_complete()) {
    r.verdict = Verdict::kUnbounded;
  } else {
    r.verdict = Verdict::kConditionallyBounded;
    r.sample = r.graph.first_uncovered();
  }
  r.summary = summarize(f, r, options);
  return r;
}

AnalysisResult analyze_program(const Program& p, const AnalysisOptions& options) {
  AnalysisResult out;
  SummaryTable summaries;
  for (const auto& f : p.functions) {
    out.functions.push_back(analyze_function(f, summaries, options));
    summaries[f.name] = out.functions.back().summary;
  }
  return out;
}

MwpMatrix evaluate(const FunctionResult& r, const Assignment& alpha) {
  if (!r.registry->valid(alpha))
    throw std::invalid_argument("assignment does not match the function's choice domains");
  return evaluate(r.matrix, alpha);
}

}  // namespace mwp
