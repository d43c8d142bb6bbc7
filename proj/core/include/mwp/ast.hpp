#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mwp {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { kVar, kAdd, kSub, kMul };

  Kind kind = Kind::kVar;
  std::string name;  // kVar only
  ExprPtr lhs;
  ExprPtr rhs;
  SourceLoc loc;

  static ExprPtr var(std::string name, SourceLoc loc = {});
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
};

struct BExpr;
using BExprPtr = std::shared_ptr<const BExpr>;

/// Kept only so that programs round-trip; the analysis never looks inside.
struct BExpr {
  enum class Kind { kCompare, kAnd, kOr, kNot };

  Kind kind = Kind::kCompare;
  std::string op;  // comparison operator for kCompare
  ExprPtr left;
  ExprPtr right;
  BExprPtr a;
  BExprPtr b;
};

struct Command {
  enum class Kind { kAssign, kIf, kWhile, kLoop, kCall };

  Kind kind = Kind::kAssign;
  std::string target;  // assigned variable; loop counter for kLoop
  ExprPtr expr;        // kAssign
  BExprPtr cond;       // kIf, kWhile
  std::vector<Command> body;       // then-branch, loop or while body
  std::vector<Command> else_body;  // kIf
  bool has_else = false;
  std::string callee;  // kCall
  std::vector<std::string> args;
  SourceLoc loc;
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<Command> body;
  std::optional<std::string> ret;
  SourceLoc loc;
};

struct Program {
  std::vector<FunctionDecl> functions;

  const FunctionDecl* find(const std::string& name) const;
};

bool operator==(const Expr& a, const Expr& b);
bool operator==(const BExpr& a, const BExpr& b);
bool operator==(const Command& a, const Command& b);
bool operator==(const FunctionDecl& a, const FunctionDecl& b);
bool operator==(const Program& a, const Program& b);

/// Variables of an expression, left to right, without duplicates.
std::vector<std::string> expr_vars(const Expr& e);

/// Matrix order for a function: parameters, then every other variable at its
/// first occurrence. Right-hand sides come before their target, a loop
/// counter after its body, call arguments before the target; conditions are
/// not looked at.
std::vector<std::string> collect_vars(const FunctionDecl& f);

/// Variables of a command list in the same walk order (no parameters).
void collect_vars(const std::vector<Command>& body, std::vector<std::string>& out);

std::string render(const Expr& e);
std::string render(const BExpr& b);
std::string render(const FunctionDecl& f);
std::string render(const Program& p);

}  // namespace mwp
