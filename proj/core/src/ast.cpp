#include "mwp/ast.hpp"

#include <algorithm>

namespace mwp {

ExprPtr Expr::var(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kVar;
  e->name = std::move(name);
  e->loc = loc;
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->loc = loc;
  return e;
}

const FunctionDecl* Program::find(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

// Equality ignores source locations.

namespace {

template <typename T>
bool ptr_eq(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.name == b.name && ptr_eq(a.lhs, b.lhs) && ptr_eq(a.rhs, b.rhs);
}

bool operator==(const BExpr& a, const BExpr& b) {
  return a.kind == b.kind && a.op == b.op && ptr_eq(a.left, b.left) &&
         ptr_eq(a.right, b.right) && ptr_eq(a.a, b.a) && ptr_eq(a.b, b.b);
}

bool operator==(const Command& a, const Command& b) {
  return a.kind == b.kind && a.target == b.target && ptr_eq(a.expr, b.expr) &&
         ptr_eq(a.cond, b.cond) && a.body == b.body && a.else_body == b.else_body &&
         a.has_else == b.has_else && a.callee == b.callee && a.args == b.args;
}

bool operator==(const FunctionDecl& a, const FunctionDecl& b) {
  return a.name == b.name && a.params == b.params && a.body == b.body && a.ret == b.ret;
}

bool operator==(const Program& a, const Program& b) { return a.functions == b.functions; }

// ---------------------------------------------------------------------------

namespace {

void note(std::vector<std::string>& out, const std::string& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void walk_expr(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::kVar) {
    note(out, e.name);
    return;
  }
  walk_expr(*e.lhs, out);
  walk_expr(*e.rhs, out);
}

}  // namespace

std::vector<std::string> expr_vars(const Expr& e) {
  std::vector<std::string> out;
  walk_expr(e, out);
  return out;
}

void collect_vars(const std::vector<Command>& body, std::vector<std::string>& out) {
  for (const auto& c : body) {
    switch (c.kind) {
      case Command::Kind::kAssign:
        walk_expr(*c.expr, out);
        note(out, c.target);
        break;
      case Command::Kind::kIf:
        collect_vars(c.body, out);
        collect_vars(c.else_body, out);
        break;
      case Command::Kind::kWhile:
        collect_vars(c.body, out);
        break;
      case Command::Kind::kLoop:
        collect_vars(c.body, out);
        note(out, c.target);
        break;
      case Command::Kind::kCall:
        for (const auto& a : c.args) note(out, a);
        note(out, c.target);
        break;
    }
  }
}

std::vector<std::string> collect_vars(const FunctionDecl& f) {
  std::vector<std::string> out;
  for (const auto& p : f.params) note(out, p);
  collect_vars(f.body, out);
  if (f.ret) note(out, *f.ret);
  return out;
}

// ---------------------------------------------------------------------------
// Rendering. Parentheses are emitted only where the grammar needs them, so a
// render/parse cycle reproduces the same tree.

namespace {

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul: return 2;
    case Expr::Kind::kVar: return 3;
  }
  return 3;
}

int prec(const BExpr& b) {
  switch (b.kind) {
    case BExpr::Kind::kOr: return 1;
    case BExpr::Kind::kAnd: return 2;
    case BExpr::Kind::kNot: return 3;
    case BExpr::Kind::kCompare: return 4;
  }
  return 4;
}

template <typename T>
std::string operand(const T& child, int parent, bool right) {
  const int p = prec(child);
  const bool paren = right ? p <= parent : p < parent;
  return paren ? "(" + render(child) + ")" : render(child);
}

void render_body(const std::vector<Command>& body, int depth, std::string& out);

void render_cmd(const Command& c, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (c.kind) {
    case Command::Kind::kAssign:
      out += pad + c.target + " = " + render(*c.expr) + ";\n";
      break;
    case Command::Kind::kCall: {
      out += pad + c.target + " = " + c.callee + "(";
      for (std::size_t i = 0; i < c.args.size(); ++i) out += (i ? ", " : "") + c.args[i];
      out += ");\n";
      break;
    }
    case Command::Kind::kIf:
      out += pad + "if (" + render(*c.cond) + ") {\n";
      render_body(c.body, depth + 1, out);
      if (c.has_else) {
        out += pad + "} else {\n";
        render_body(c.else_body, depth + 1, out);
      }
      out += pad + "}\n";
      break;
    case Command::Kind::kWhile:
      out += pad + "while (" + render(*c.cond) + ") {\n";
      render_body(c.body, depth + 1, out);
      out += pad + "}\n";
      break;
    case Command::Kind::kLoop:
      out += pad + "loop " + c.target + " {\n";
      render_body(c.body, depth + 1, out);
      out += pad + "}\n";
      break;
  }
}

void render_body(const std::vector<Command>& body, int depth, std::string& out) {
  for (const auto& c : body) render_cmd(c, depth, out);
}

}  // namespace

std::string render(const Expr& e) {
  if (e.kind == Expr::Kind::kVar) return e.name;
  const char* op = e.kind == Expr::Kind::kAdd ? " + " : e.kind == Expr::Kind::kSub ? " - " : " * ";
  return operand(*e.lhs, prec(e), false) + op + operand(*e.rhs, prec(e), true);
}

std::string render(const BExpr& b) {
  switch (b.kind) {
    case BExpr::Kind::kCompare: return render(*b.left) + " " + b.op + " " + render(*b.right);
    case BExpr::Kind::kNot: return "!" + operand(*b.a, prec(b), false);
    case BExpr::Kind::kAnd: return operand(*b.a, 2, false) + " && " + operand(*b.b, 2, true);
    case BExpr::Kind::kOr: return operand(*b.a, 1, false) + " || " + operand(*b.b, 1, true);
  }
  return {};
}

std::string render(const FunctionDecl& f) {
  std::string out = "function " + f.name + "(";
  for (std::size_t i = 0; i < f.params.size(); ++i) out += (i ? ", " : "") + f.params[i];
  out += ") {\n";
  render_body(f.body, 1, out);
  if (f.ret) out += "  return " + *f.ret + ";\n";
  out += "}\n";
  return out;
}

std::string render(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.functions.size(); ++i) {
    if (i) out += "\n";
    out += render(p.functions[i]);
  }
  return out;
}

}  // namespace mwp
