#include "mwp/inliner.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mwp {

namespace {

using Rename = std::function<std::string(const std::string&)>;

ExprPtr rename_expr(const ExprPtr& e, const Rename& rn) {
  if (e->kind == Expr::Kind::kVar) return Expr::var(rn(e->name), e->loc);
  return Expr::binary(e->kind, rename_expr(e->lhs, rn), rename_expr(e->rhs, rn), e->loc);
}

BExprPtr rename_bexpr(const BExprPtr& b, const Rename& rn) {
  if (!b) return b;
  auto out = std::make_shared<BExpr>(*b);
  if (b->left) out->left = rename_expr(b->left, rn);
  if (b->right) out->right = rename_expr(b->right, rn);
  out->a = rename_bexpr(b->a, rn);
  out->b = rename_bexpr(b->b, rn);
  return out;
}

std::vector<Command> rename_body(const std::vector<Command>& body, const Rename& rn) {
  std::vector<Command> out;
  out.reserve(body.size());
  for (const auto& c : body) {
    Command r = c;
    r.target = rn(c.target);
    if (c.expr) r.expr = rename_expr(c.expr, rn);
    r.cond = rename_bexpr(c.cond, rn);
    r.body = rename_body(c.body, rn);
    r.else_body = rename_body(c.else_body, rn);
    for (auto& a : r.args) a = rn(a);
    out.push_back(std::move(r));
  }
  return out;
}

Command assign(const std::string& target, const std::string& source) {
  Command c;
  c.kind = Command::Kind::kAssign;
  c.target = target;
  c.expr = Expr::var(source);
  return c;
}

// Splices `replacement` in place of the first call to `callee`.
bool splice_first_call(std::vector<Command>& body, const std::string& callee,
                       const std::function<std::vector<Command>(const Command&)>& replacement) {
  for (std::size_t k = 0; k < body.size(); ++k) {
    auto& c = body[k];
    if (c.kind == Command::Kind::kCall && c.callee == callee) {
      auto seq = replacement(c);
      body.erase(body.begin() + static_cast<std::ptrdiff_t>(k));
      body.insert(body.begin() + static_cast<std::ptrdiff_t>(k), seq.begin(), seq.end());
      return true;
    }
    if (splice_first_call(c.body, callee, replacement)) return true;
    if (splice_first_call(c.else_body, callee, replacement)) return true;
  }
  return false;
}

std::size_t expr_choices(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kVar:
    case Expr::Kind::kMul: return 0;
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1 + expr_choices(*e.lhs) + expr_choices(*e.rhs);
  }
  return 0;
}

bool count_until(const std::vector<Command>& body, const std::string& callee,
                 const SummaryTable& summaries, std::size_t& count) {
  for (const auto& c : body) {
    switch (c.kind) {
      case Command::Kind::kAssign:
        count += expr_choices(*c.expr);
        break;
      case Command::Kind::kCall: {
        if (c.callee == callee) return true;
        auto it = summaries.find(c.callee);
        if (it != summaries.end() && !it->second.behaviors.empty()) ++count;
        break;
      }
      case Command::Kind::kIf:
        if (count_until(c.body, callee, summaries, count)) return true;
        if (count_until(c.else_body, callee, summaries, count)) return true;
        break;
      case Command::Kind::kWhile:
      case Command::Kind::kLoop:
        if (count_until(c.body, callee, summaries, count)) return true;
        break;
    }
  }
  return false;
}

// Whether the first call to `callee` sits inside a loop or while body;
// nullopt if there is none.
std::optional<bool> call_repeats(const std::vector<Command>& body, const std::string& callee,
                                 bool inside) {
  for (const auto& c : body) {
    if (c.kind == Command::Kind::kCall && c.callee == callee) return inside;
    const bool loop = c.kind == Command::Kind::kLoop || c.kind == Command::Kind::kWhile;
    if (auto r = call_repeats(c.body, callee, inside || loop)) return r;
    if (auto r = call_repeats(c.else_body, callee, inside)) return r;
  }
  return std::nullopt;
}

bool has_infinity(const MwpMatrix& m, const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols) {
  for (auto i : rows)
    for (auto j : cols)
      if (m.at(i, j) == MwpInf::kInf) return true;
  return false;
}

std::string show(const Assignment& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s + ")";
}

}  // namespace

InlineResult build_inlined(const FunctionDecl& caller, const FunctionDecl& callee) {
  InlineResult r;
  r.caller_vars = collect_vars(caller);
  if (!callee.ret) throw AnalysisError("callee '" + callee.name + "' returns nothing");
  const std::set<std::string> taken(r.caller_vars.begin(), r.caller_vars.end());

  auto fresh = [&](const std::string& name) {
    if (taken.count(name)) throw AnalysisError("internal: fresh name '" + name + "' is taken");
    return name;
  };
  for (std::size_t q = 0; q < callee.params.size(); ++q)
    r.renaming[callee.params[q]] = fresh("__y" + std::to_string(q + 1));
  const std::string result = fresh("__r1");
  const bool ret_is_param = r.renaming.count(*callee.ret) != 0;
  if (!ret_is_param) r.renaming[*callee.ret] = result;
  int next = 1;
  for (const auto& v : collect_vars(callee)) {
    if (r.renaming.count(v)) continue;
    r.renaming[v] = taken.count(v) ? fresh("__v" + std::to_string(next++)) : v;
  }
  const Rename rn = [&](const std::string& v) {
    auto it = r.renaming.find(v);
    return it == r.renaming.end() ? v : it->second;
  };
  const auto body = rename_body(callee.body, rn);

  r.inlined = caller;
  const bool found = splice_first_call(r.inlined.body, callee.name, [&](const Command& call) {
    std::vector<Command> seq;
    for (std::size_t q = 0; q < call.args.size(); ++q)
      seq.push_back(assign(r.renaming.at(callee.params[q]), call.args[q]));
    seq.insert(seq.end(), body.begin(), body.end());
    if (ret_is_param) seq.push_back(assign(result, r.renaming.at(*callee.ret)));
    seq.push_back(assign(call.target, result));
    return seq;
  });
  if (!found)
    throw AnalysisError("'" + caller.name + "' has no call to '" + callee.name + "'");
  return r;
}

template <typename M>
M project_variables(const M& m, const std::vector<std::string>& vars,
                    const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (const auto& k : keep) {
    auto it = std::find(vars.begin(), vars.end(), k);
    if (it == vars.end()) throw AnalysisError("cannot project on unknown variable '" + k + "'");
    idx.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  M out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, j) = m.at(idx[i], idx[j]);
  return out;
}

template PolyMatrix project_variables(const PolyMatrix&, const std::vector<std::string>&,
                                      const std::vector<std::string>&);
template MwpMatrix project_variables(const MwpMatrix&, const std::vector<std::string>&,
                                     const std::vector<std::string>&);

std::optional<std::size_t> choices_before_call(const std::vector<Command>& body,
                                               const std::string& callee,
                                               const SummaryTable& summaries) {
  std::size_t count = 0;
  if (!count_until(body, callee, summaries, count)) return std::nullopt;
  return count;
}

TheoremReport check_call_theorem(const Program& program, const std::string& caller_name,
                                 const std::string& callee_name, std::size_t budget) {
  TheoremReport rep;
  const FunctionDecl* caller = program.find(caller_name);
  const FunctionDecl* callee = program.find(callee_name);
  if (!caller || !callee) throw AnalysisError("unknown function in theorem check");

  // Summaries of everything declared before the caller.
  SummaryTable summaries;
  FunctionResult callee_result;
  for (const auto& f : program.functions) {
    if (&f == caller) break;
    auto r = analyze_function(f, summaries);
    summaries[f.name] = r.summary;
    if (&f == callee) callee_result = std::move(r);
  }
  if (!summaries.count(callee_name))
    throw AnalysisError("'" + callee_name + "' is not declared before '" + caller_name + "'");
  const auto& behaviors = summaries.at(callee_name).behaviors;
  if (behaviors.empty()) {
    rep.status = TheoremReport::Status::kNotApplicable;
    rep.detail = "callee has no infinity-free assignment";
    return rep;
  }

  const auto call_at = choices_before_call(caller->body, callee_name, summaries);
  if (!call_at) throw AnalysisError("'" + caller_name + "' has no call to '" + callee_name + "'");
  const std::size_t i0 = *call_at;

  const auto ret_col = static_cast<std::size_t>(
      std::find(callee_result.variables.begin(), callee_result.variables.end(), *callee->ret) -
      callee_result.variables.begin());

  // Summaries only see parameters. When the call is repeated, a callee
  // variable that is not a parameter keeps its value in P[F] from one call
  // to the next, so if it reaches the result the two sides cannot agree.
  if (call_repeats(caller->body, callee_name, false).value_or(false)) {
    std::optional<std::string> carried;
    callee_result.graph.for_each_uncovered([&](const Assignment& c) {
      for (std::size_t v = callee->params.size(); v < callee_result.variables.size(); ++v)
        if (callee_result.matrix.at(v, ret_col).eval(c) != MwpInf::kZero) {
          carried = callee_result.variables[v];
          return false;
        }
      return true;
    });
    if (carried) {
      rep.status = TheoremReport::Status::kNotApplicable;
      rep.detail = "call is repeated and callee variable '" + *carried +
                   "' carries state into the result";
      return rep;
    }
  }

  const auto inl = build_inlined(*caller, *callee);
  const auto p = analyze_function(*caller, summaries);
  const auto pf = analyze_function(inl.inlined, summaries);
  const auto& reg_p = *p.registry;
  const auto& reg_pf = *pf.registry;
  const std::size_t kf = callee_result.registry->size();

  if (reg_pf.assignment_count() > budget || reg_p.assignment_count() > budget) {
    rep.status = TheoremReport::Status::kRefused;
    rep.detail = "inlined program has " + std::to_string(reg_pf.assignment_count()) +
                 " assignments, budget is " + std::to_string(budget);
    return rep;
  }
  if (reg_pf.size() != reg_p.size() - 1 + kf) {
    rep.status = TheoremReport::Status::kFails;
    rep.detail = "choice counts do not line up";
    return rep;
  }

  auto fail = [&](std::string why) {
    rep.status = TheoremReport::Status::kFails;
    rep.detail = std::move(why);
    return rep;
  };

  auto inject = [&](const Assignment& a) {
    Assignment b(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i0));
    const auto& rep_c = behaviors.at(a[i0]).representative;
    b.insert(b.end(), rep_c.begin(), rep_c.end());
    b.insert(b.end(), a.begin() + static_cast<std::ptrdiff_t>(i0) + 1, a.end());
    return b;
  };

  std::set<Assignment> image;
  bool bad = false;
  reg_p.for_each([&](const Assignment& a) {
    ++rep.caller_assignments;
    const auto b = inject(a);
    image.insert(b);
    const auto lhs = evaluate(p.matrix, a);
    const auto rhs = project_variables(evaluate(pf.matrix, b), pf.variables, inl.caller_vars);
    if (!(lhs == rhs)) {
      fail("M(P) at " + show(a) + " differs from the inlined program at " + show(b));
      bad = true;
    }
    return !bad;
  });
  if (bad) return rep;

  std::vector<std::size_t> caller_idx, other_idx;
  for (std::size_t v = 0; v < pf.variables.size(); ++v) {
    const bool in_p = std::find(inl.caller_vars.begin(), inl.caller_vars.end(),
                                pf.variables[v]) != inl.caller_vars.end();
    (in_p ? caller_idx : other_idx).push_back(v);
  }
  reg_pf.for_each([&](const Assignment& b) {
    if (image.count(b)) return true;
    ++rep.outside_assignments;
    const Assignment c(b.begin() + static_cast<std::ptrdiff_t>(i0),
                       b.begin() + static_cast<std::ptrdiff_t>(i0 + kf));
    const auto mb = evaluate(pf.matrix, b);
    if (callee_result.graph.covered(c)) {
      if (!has_infinity(mb, other_idx, other_idx)) {
        fail("no infinity outside the caller block at " + show(b));
        bad = true;
      }
      return !bad;
    }
    if (!has_infinity(mb, other_idx, other_idx)) ++rep.merged_outside;
    // The callee part is infinity-free: find its behaviour.
    std::vector<Mwp> flows(callee->params.size());
    for (std::size_t q = 0; q < flows.size(); ++q)
      flows[q] = narrow(callee_result.matrix.at(q, ret_col).eval(c)).value_or(Mwp::kP);
    auto it = std::find_if(behaviors.begin(), behaviors.end(),
                           [&](const Behavior& x) { return x.flows == flows; });
    if (it == behaviors.end()) {
      fail("callee part of " + show(b) + " has no matching behaviour");
      bad = true;
      return false;
    }
    Assignment a(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i0));
    a.push_back(static_cast<std::uint32_t>(it - behaviors.begin()));
    a.insert(a.end(), b.begin() + static_cast<std::ptrdiff_t>(i0 + kf), b.end());
    const auto lhs = evaluate(p.matrix, a);
    const auto rhs = project_variables(mb, pf.variables, inl.caller_vars);
    if (!(lhs == rhs)) {
      fail("merged assignment " + show(b) + " disagrees with M(P) at " + show(a));
      bad = true;
    }
    return !bad;
  });
  if (bad) return rep;
  rep.detail = "holds";
  return rep;
}

}  // namespace mwp
