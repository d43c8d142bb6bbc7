#include "jk_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwp::testkit {

namespace {

constexpr int kZ = 0, kM = 1, kW = 2, kP = 3;

int jadd(int a, int b) { return std::max(a, b); }
int jmul(int a, int b) { return (a == kZ || b == kZ) ? kZ : std::max(a, b); }

JkMatrix ident(std::size_t n) {
  JkMatrix m(n, std::vector<int>(n, kZ));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = kM;
  return m;
}

JkMatrix madd(const JkMatrix& a, const JkMatrix& b) {
  JkMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] = jadd(a[i][j], b[i][j]);
  return c;
}

JkMatrix mmul(const JkMatrix& a, const JkMatrix& b) {
  const std::size_t n = a.size();
  JkMatrix c(n, std::vector<int>(n, kZ));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] = jadd(c[i][j], jmul(a[i][k], b[k][j]));
  return c;
}

// 1 + M + ... + M^n, by explicit powers.
JkMatrix star(const JkMatrix& m) {
  const std::size_t n = m.size();
  JkMatrix acc = ident(n), power = ident(n);
  for (std::size_t k = 0; k < n + 1; ++k) {
    power = mmul(power, m);
    acc = madd(acc, power);
  }
  return acc;
}

std::size_t var_index(const std::vector<std::string>& vars, const std::string& v) {
  auto it = std::find(vars.begin(), vars.end(), v);
  if (it == vars.end()) throw std::invalid_argument("unknown variable " + v);
  return static_cast<std::size_t>(it - vars.begin());
}

void vars_of(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::kVar) {
    if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    return;
  }
  vars_of(*e.lhs, out);
  vars_of(*e.rhs, out);
}

JkVector weak_vec(const Expr& e, const std::vector<std::string>& vars) {
  JkVector v(vars.size(), kZ);
  std::vector<std::string> vs;
  vars_of(e, vs);
  for (const auto& x : vs) v[var_index(vars, x)] = kW;
  return v;
}

JkVector combine(const JkVector& a, const JkVector& b, bool weight_left) {
  JkVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = weight_left ? jadd(jmul(kP, a[i]), b[i]) : jadd(a[i], jmul(kP, b[i]));
  return out;
}

JkMatrix with_column(std::size_t n, std::size_t j, const JkVector& v) {
  JkMatrix m = ident(n);
  for (std::size_t i = 0; i < n; ++i) m[i][j] = v[i];
  return m;
}

std::optional<JkMatrix> close_loop(const JkMatrix& body, std::optional<std::size_t> counter) {
  const std::size_t n = body.size();
  JkMatrix s = star(body);
  for (std::size_t i = 0; i < n; ++i)
    if (s[i][i] != kM) return std::nullopt;
  if (!counter) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s[i][j] == kP) return std::nullopt;
    return s;
  }
  JkMatrix out = s;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (s[i][j] == kP) out[*counter][j] = jadd(out[*counter][j], kP);
  return out;
}

// --- all derivations -------------------------------------------------------

std::set<JkVector> expr_set(const Expr& e, const std::vector<std::string>& vars,
                            const JkOptions& o) {
  std::set<JkVector> out;
  if (e.kind == Expr::Kind::kVar) {
    JkVector v(vars.size(), kZ);
    v[var_index(vars, e.name)] = kM;
    out.insert(v);
    if (o.weak_on_variables) out.insert(weak_vec(e, vars));
    return out;
  }
  out.insert(weak_vec(e, vars));
  if (e.kind == Expr::Kind::kMul) return out;
  const auto l = expr_set(*e.lhs, vars, o);
  const auto r = expr_set(*e.rhs, vars, o);
  for (const auto& a : l)
    for (const auto& b : r) {
      out.insert(combine(a, b, true));
      out.insert(combine(a, b, false));
    }
  return out;
}

std::set<JkMatrix> body_set(const std::vector<Command>& body, const std::vector<std::string>& vars,
                            const JkOptions& o);

std::set<JkMatrix> cmd_set(const Command& c, const std::vector<std::string>& vars,
                           const JkOptions& o) {
  const std::size_t n = vars.size();
  std::set<JkMatrix> out;
  switch (c.kind) {
    case Command::Kind::kAssign:
      for (const auto& v : expr_set(*c.expr, vars, o))
        out.insert(with_column(n, var_index(vars, c.target), v));
      break;
    case Command::Kind::kIf: {
      const auto a = body_set(c.body, vars, o);
      const auto b = body_set(c.else_body, vars, o);
      for (const auto& x : a)
        for (const auto& y : b) out.insert(madd(x, y));
      break;
    }
    case Command::Kind::kWhile:
    case Command::Kind::kLoop: {
      std::optional<std::size_t> counter;
      if (c.kind == Command::Kind::kLoop) counter = var_index(vars, c.target);
      for (const auto& m : body_set(c.body, vars, o))
        if (auto r = close_loop(m, counter)) out.insert(*r);
      break;
    }
    case Command::Kind::kCall:
      throw std::invalid_argument("the reference calculus has no calls");
  }
  return out;
}

std::set<JkMatrix> body_set(const std::vector<Command>& body, const std::vector<std::string>& vars,
                            const JkOptions& o) {
  std::set<JkMatrix> acc{ident(vars.size())};
  for (const auto& c : body) {
    const auto next = cmd_set(c, vars, o);
    std::set<JkMatrix> prod;
    for (const auto& a : acc)
      for (const auto& b : next) prod.insert(mmul(a, b));
    acc = std::move(prod);
  }
  return acc;
}

// --- one derivation --------------------------------------------------------

struct Picker {
  const std::vector<std::uint32_t>& picks;
  std::size_t next = 0;
  std::uint32_t take() {
    if (next >= picks.size()) throw std::invalid_argument("too few picks");
    return picks[next++];
  }
};

JkVector expr_one(const Expr& e, const std::vector<std::string>& vars, Picker& pk) {
  if (e.kind == Expr::Kind::kVar) {
    JkVector v(vars.size(), kZ);
    v[var_index(vars, e.name)] = kM;
    return v;
  }
  if (e.kind == Expr::Kind::kMul) return weak_vec(e, vars);
  const auto pick = pk.take();
  const auto a = expr_one(*e.lhs, vars, pk);
  const auto b = expr_one(*e.rhs, vars, pk);
  if (pick == 0) return combine(a, b, false);
  if (pick == 1) return combine(a, b, true);
  return weak_vec(e, vars);
}

std::optional<JkMatrix> body_one(const std::vector<Command>& body,
                                 const std::vector<std::string>& vars, Picker& pk);

std::optional<JkMatrix> cmd_one(const Command& c, const std::vector<std::string>& vars,
                                Picker& pk) {
  const std::size_t n = vars.size();
  switch (c.kind) {
    case Command::Kind::kAssign:
      return with_column(n, var_index(vars, c.target), expr_one(*c.expr, vars, pk));
    case Command::Kind::kIf: {
      auto a = body_one(c.body, vars, pk);
      auto b = body_one(c.else_body, vars, pk);
      if (!a || !b) return std::nullopt;
      return madd(*a, *b);
    }
    case Command::Kind::kWhile:
    case Command::Kind::kLoop: {
      auto m = body_one(c.body, vars, pk);
      if (!m) return std::nullopt;
      std::optional<std::size_t> counter;
      if (c.kind == Command::Kind::kLoop) counter = var_index(vars, c.target);
      return close_loop(*m, counter);
    }
    case Command::Kind::kCall:
      throw std::invalid_argument("the reference calculus has no calls");
  }
  return std::nullopt;
}

std::optional<JkMatrix> body_one(const std::vector<Command>& body,
                                 const std::vector<std::string>& vars, Picker& pk) {
  JkMatrix acc = ident(vars.size());
  bool ok = true;
  for (const auto& c : body) {
    // Keep consuming picks after a failure so indices stay aligned.
    auto m = cmd_one(c, vars, pk);
    if (!m) ok = false;
    if (ok) acc = mmul(acc, *m);
  }
  if (!ok) return std::nullopt;
  return acc;
}

std::size_t count_expr(const Expr& e) {
  if (e.kind == Expr::Kind::kVar || e.kind == Expr::Kind::kMul) return 0;
  return 1 + count_expr(*e.lhs) + count_expr(*e.rhs);
}

}  // namespace

std::set<JkMatrix> jk_derivable(const std::vector<Command>& body,
                                const std::vector<std::string>& vars, const JkOptions& options) {
  return body_set(body, vars, options);
}

std::optional<JkMatrix> jk_derive(const std::vector<Command>& body,
                                  const std::vector<std::string>& vars,
                                  const std::vector<std::uint32_t>& picks) {
  Picker pk{picks};
  return body_one(body, vars, pk);
}

std::size_t jk_choice_count(const std::vector<Command>& body) {
  std::size_t n = 0;
  for (const auto& c : body) {
    if (c.expr) n += count_expr(*c.expr);
    n += jk_choice_count(c.body) + jk_choice_count(c.else_body);
  }
  return n;
}

MwpMatrix to_mwp(const JkMatrix& m) {
  MwpMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = static_cast<MwpInf>(m[i][j]);
  return out;
}

std::optional<JkMatrix> from_mwp(const MwpMatrix& m) {
  JkMatrix out(m.size(), std::vector<int>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m.at(i, j) == MwpInf::kInf) return std::nullopt;
      out[i][j] = static_cast<int>(m.at(i, j));
    }
  return out;
}

bool dominated(const JkMatrix& a, const JkMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] > b[i][j]) return false;
  return true;
}

}  // namespace mwp::testkit
