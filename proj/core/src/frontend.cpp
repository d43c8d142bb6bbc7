#include "mwp/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace mwp {

std::string Diagnostic::format() const {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
         (severity == Severity::kError ? "error " : "warning ") + code + ": " + message;
}

namespace {

enum class Tok {
  kIdent,
  kFunction,
  kReturn,
  kIf,
  kElse,
  kWhile,
  kLoop,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemi,
  kAssign,
  kPlus,
  kMinus,
  kStar,
  kCmp,  // < <= > >= == !=
  kAnd,
  kOr,
  kNot,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

[[noreturn]] void fail(const char* code, SourceLoc loc, std::string msg) {
  throw ParseError(Diagnostic{Diagnostic::Severity::kError, code, loc, std::move(msg)});
}

std::vector<Token> lex(std::string_view src, bool allow_reserved) {
  static const std::map<std::string, Tok, std::less<>> kKeywords = {
      {"function", Tok::kFunction}, {"return", Tok::kReturn}, {"if", Tok::kIf},
      {"else", Tok::kElse},         {"while", Tok::kWhile},   {"loop", Tok::kLoop},
  };
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;  // count UTF-8 lead bytes only
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    const SourceLoc loc{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      if (auto it = kKeywords.find(word); it != kKeywords.end()) {
        out.push_back({it->second, word, loc});
      } else {
        if (!allow_reserved && word.rfind("__", 0) == 0)
          fail(kReservedName, loc, "identifier '" + word + "' uses the reserved '__' prefix");
        out.push_back({Tok::kIdent, word, loc});
      }
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      fail(kLexError, loc, "numeric literals are not part of the language");
    auto two = src.substr(i, 2);
    if (two == "<=" || two == ">=" || two == "==" || two == "!=") {
      out.push_back({Tok::kCmp, std::string(two), loc});
      advance(2);
      continue;
    }
    if (two == "&&" || two == "||") {
      out.push_back({two == "&&" ? Tok::kAnd : Tok::kOr, std::string(two), loc});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case '{': kind = Tok::kLBrace; break;
      case '}': kind = Tok::kRBrace; break;
      case ',': kind = Tok::kComma; break;
      case ';': kind = Tok::kSemi; break;
      case '=': kind = Tok::kAssign; break;
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '<':
      case '>': kind = Tok::kCmp; break;
      case '!': kind = Tok::kNot; break;
      default: fail(kLexError, loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), loc});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kFunction: return "'function'";
    case Tok::kReturn: return "'return'";
    case Tok::kIf: return "'if'";
    case Tok::kElse: return "'else'";
    case Tok::kWhile: return "'while'";
    case Tok::kLoop: return "'loop'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kComma: return "','";
    case Tok::kSemi: return "';'";
    case Tok::kAssign: return "'='";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kCmp: return "comparison";
    case Tok::kAnd: return "'&&'";
    case Tok::kOr: return "'||'";
    case Tok::kNot: return "'!'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (peek().kind != Tok::kEnd) p.functions.push_back(function());
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind)
      fail(kSyntaxError, t.loc,
           std::string("expected ") + describe(kind) + ", found " + describe(t.kind) +
               (t.text.empty() ? "" : " '" + t.text + "'"));
    ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  FunctionDecl function() {
    FunctionDecl f;
    f.loc = expect(Tok::kFunction).loc;
    f.name = expect(Tok::kIdent).text;
    expect(Tok::kLParen);
    if (peek().kind != Tok::kRParen) {
      do {
        f.params.push_back(expect(Tok::kIdent).text);
      } while (accept(Tok::kComma));
    }
    expect(Tok::kRParen);
    expect(Tok::kLBrace);
    while (peek().kind != Tok::kRBrace && peek().kind != Tok::kReturn) f.body.push_back(command());
    if (accept(Tok::kReturn)) {
      f.ret = expect(Tok::kIdent).text;
      expect(Tok::kSemi);
    }
    expect(Tok::kRBrace);
    return f;
  }

  std::vector<Command> block() {
    expect(Tok::kLBrace);
    std::vector<Command> body;
    while (peek().kind != Tok::kRBrace) body.push_back(command());
    expect(Tok::kRBrace);
    return body;
  }

  Command command() {
    Command c;
    const Token& t = peek();
    c.loc = t.loc;
    switch (t.kind) {
      case Tok::kIf:
        ++pos_;
        c.kind = Command::Kind::kIf;
        expect(Tok::kLParen);
        c.cond = bexpr();
        expect(Tok::kRParen);
        c.body = block();
        if (accept(Tok::kElse)) {
          c.has_else = true;
          c.else_body = block();
        }
        return c;
      case Tok::kWhile:
        ++pos_;
        c.kind = Command::Kind::kWhile;
        expect(Tok::kLParen);
        c.cond = bexpr();
        expect(Tok::kRParen);
        c.body = block();
        return c;
      case Tok::kLoop:
        ++pos_;
        c.kind = Command::Kind::kLoop;
        c.target = expect(Tok::kIdent).text;
        c.body = block();
        return c;
      case Tok::kIdent:
        break;
      default:
        fail(kSyntaxError, t.loc,
             std::string("expected a command, found ") + describe(t.kind));
    }
    c.target = expect(Tok::kIdent).text;
    expect(Tok::kAssign);
    if (peek().kind == Tok::kIdent && peek(1).kind == Tok::kLParen) {
      c.kind = Command::Kind::kCall;
      c.callee = expect(Tok::kIdent).text;
      expect(Tok::kLParen);
      if (peek().kind != Tok::kRParen) {
        do {
          c.args.push_back(expect(Tok::kIdent).text);
        } while (accept(Tok::kComma));
      }
      expect(Tok::kRParen);
    } else {
      c.kind = Command::Kind::kAssign;
      c.expr = expr();
    }
    expect(Tok::kSemi);
    return c;
  }

  ExprPtr expr() {
    auto lhs = term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const Token& op = peek();
      ++pos_;
      auto kind = op.kind == Tok::kPlus ? Expr::Kind::kAdd : Expr::Kind::kSub;
      lhs = Expr::binary(kind, lhs, term(), op.loc);
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = factor();
    while (peek().kind == Tok::kStar) {
      const SourceLoc loc = peek().loc;
      ++pos_;
      lhs = Expr::binary(Expr::Kind::kMul, lhs, factor(), loc);
    }
    return lhs;
  }

  ExprPtr factor() {
    if (accept(Tok::kLParen)) {
      auto e = expr();
      expect(Tok::kRParen);
      return e;
    }
    const Token& t = expect(Tok::kIdent);
    return Expr::var(t.text, t.loc);
  }

  BExprPtr bexpr() {
    auto lhs = band();
    while (accept(Tok::kOr)) {
      auto b = std::make_shared<BExpr>();
      b->kind = BExpr::Kind::kOr;
      b->a = lhs;
      b->b = band();
      lhs = b;
    }
    return lhs;
  }

  BExprPtr band() {
    auto lhs = bunary();
    while (accept(Tok::kAnd)) {
      auto b = std::make_shared<BExpr>();
      b->kind = BExpr::Kind::kAnd;
      b->a = lhs;
      b->b = bunary();
      lhs = b;
    }
    return lhs;
  }

  BExprPtr bunary() {
    if (accept(Tok::kNot)) {
      auto b = std::make_shared<BExpr>();
      b->kind = BExpr::Kind::kNot;
      b->a = bunary();
      return b;
    }
    if (peek().kind == Tok::kLParen) {
      // Either a parenthesised condition or an arithmetic operand of a
      // comparison; try the former and fall back.
      const std::size_t save = pos_;
      try {
        ++pos_;
        auto inner = bexpr();
        expect(Tok::kRParen);
        const Tok next = peek().kind;
        if (next != Tok::kCmp && next != Tok::kPlus && next != Tok::kMinus && next != Tok::kStar)
          return inner;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    auto b = std::make_shared<BExpr>();
    b->kind = BExpr::Kind::kCompare;
    b->left = expr();
    b->op = expect(Tok::kCmp).text;
    b->right = expr();
    return b;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Program-level checks

void walk_calls(const std::vector<Command>& body, const std::function<void(const Command&)>& fn) {
  for (const auto& c : body) {
    fn(c);
    walk_calls(c.body, fn);
    walk_calls(c.else_body, fn);
  }
}

void check_counters(const std::vector<Command>& body, std::vector<std::string>& counters,
                    std::vector<Diagnostic>& warnings) {
  for (const auto& c : body) {
    const bool assigns = c.kind == Command::Kind::kAssign || c.kind == Command::Kind::kCall;
    if (assigns && std::find(counters.begin(), counters.end(), c.target) != counters.end())
      warnings.push_back({Diagnostic::Severity::kWarning, kCounterAssigned, c.loc,
                          "loop counter '" + c.target + "' is assigned inside its own loop"});
    if (c.kind == Command::Kind::kLoop) {
      counters.push_back(c.target);
      check_counters(c.body, counters, warnings);
      counters.pop_back();
    } else {
      check_counters(c.body, counters, warnings);
      check_counters(c.else_body, counters, warnings);
    }
  }
}

void validate(const Program& p, const ParseOptions& opts, std::vector<Diagnostic>& warnings) {
  std::map<std::string, const FunctionDecl*> declared;
  for (const auto& f : p.functions) {
    if (declared.count(f.name))
      fail(kDuplicateFunction, f.loc, "function '" + f.name + "' is already declared");

    std::set<std::string> seen;
    for (const auto& prm : f.params)
      if (!seen.insert(prm).second)
        fail(kDuplicateParam, f.loc, "parameter '" + prm + "' is repeated in '" + f.name + "'");

    if (f.name == "main") {
      if (!f.params.empty()) fail(kMainHasParams, f.loc, "main must not take parameters");
      if (f.ret) fail(kMainReturns, f.loc, "main must not return a value");
    }

    if (f.ret) {
      std::vector<std::string> vars = f.params;
      collect_vars(f.body, vars);
      if (std::find(vars.begin(), vars.end(), *f.ret) == vars.end())
        fail(kUnusedReturn, f.loc,
             "returned variable '" + *f.ret + "' does not occur in '" + f.name + "'");
    }

    walk_calls(f.body, [&](const Command& c) {
      if (c.kind != Command::Kind::kCall) return;
      if (c.callee == "main") fail(kCallToMain, c.loc, "main cannot be called");
      auto it = declared.find(c.callee);
      if (it == declared.end())
        fail(kUndeclaredCall, c.loc,
             c.callee == f.name ? "recursive call to '" + c.callee + "'"
                                : "call to '" + c.callee + "' before its declaration");
      if (it->second->params.size() != c.args.size())
        fail(kArityMismatch, c.loc,
             "'" + c.callee + "' expects " + std::to_string(it->second->params.size()) +
                 " argument(s), got " + std::to_string(c.args.size()));
    });

    std::vector<std::string> counters;
    check_counters(f.body, counters, warnings);
    declared.emplace(f.name, &f);
  }
  if (opts.require_main && !declared.count("main"))
    fail(kNoMain, SourceLoc{1, 1}, "program has no main function");
}

}  // namespace

ParseResult parse(std::string_view source, const ParseOptions& options) {
  ParseResult r;
  r.program = Parser(lex(source, options.allow_reserved)).program();
  validate(r.program, options, r.warnings);
  return r;
}

Program parse_program(std::string_view source, const ParseOptions& options) {
  return parse(source, options).program;
}

}  // namespace mwp
